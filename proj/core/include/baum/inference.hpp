#ifndef BAUM_INFERENCE_HPP
#define BAUM_INFERENCE_HPP

#include <vector>

#include "baum/model.hpp"

namespace baum {

struct SelectionResult {
  std::vector<char> selected;  // per metabolite
  double threshold = 1.0;      // phi
  int xi = 0;                  // cutoff rank; 0 means empty selection
  double alpha = 0.2;
};

struct AbundanceEstimate {
  // subjects x metabolites; NaN marks metabolites with zero match-probability mass
  std::vector<std::vector<double>> values;
  std::vector<std::vector<double>> weights;  // per metabolite, over features; sums to 1
  std::vector<char> missing;                 // per metabolite
};

// Bayesian FDR rule: largest descending-u prefix with mean(1-u) <= alpha;
// selection is boundary-inclusive (u_j >= phi).
SelectionResult select_fdr(const std::vector<double>& u, double alpha);

// Row argmax of lambda-hat; ties broken toward the smaller metabolite index.
std::vector<int> assign_matches(const std::vector<std::vector<Candidate>>& match_prob);

AbundanceEstimate estimate_abundance(const std::vector<std::vector<Candidate>>& match_prob,
                                     const std::vector<std::vector<double>>& feature_matrix,
                                     int n_metabolites);

}  // namespace baum

#endif
