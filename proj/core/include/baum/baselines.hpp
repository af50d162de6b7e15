#ifndef BAUM_BASELINES_HPP
#define BAUM_BASELINES_HPP

#include <optional>
#include <vector>

#include "baum/model.hpp"
#include "baum/simulation.hpp"

namespace baum {

struct MetricReport {
  double acc = 0, fpr = 0, tpr = 0;
  std::optional<double> auc;  // missing when truth is single-class
  int n_eval = 0;
};

struct LocfdrResult {
  std::vector<char> evaluated;  // metabolites with >= 1 contributing feature
  std::vector<double> statistic;
  std::vector<double> lfdr;
  std::vector<char> selected;
  bool em_converged = true;
};

struct GaussianMixtureFit {
  double pi0, mean0, var0, mean1, var1;
  bool converged;
};

// Two-component Gaussian mixture by EM; pi0_init seeds the null proportion,
// component means start at (0, mean of the top decile).
GaussianMixtureFit fit_two_gaussian_em(const std::vector<double>& x, double pi0_init,
                                       int max_iter = 500, double tol = 1e-8);

enum class LocfdrWeights { Equal, Posterior };

// Metabolite statistic = weighted average of feature statistics over features
// listing the metabolite as a candidate; selection controls local FDR at `alpha`.
LocfdrResult locfdr_baseline(const ProblemInput& input, LocfdrWeights weights,
                             const std::vector<std::vector<Candidate>>* match_prob,
                             double pi0_init, double alpha = 0.2);

// Metabolite selection metrics on the matched-only scope.
MetricReport evaluate_selection(const std::vector<char>& selected,
                                const std::vector<double>& scores,
                                const ScenarioTruth& truth,
                                const std::vector<char>& matched_scope);

// Feature matching metrics over features with >= 2 candidates; a feature is
// correct when its assigned metabolite's class equals its true metabolite's class.
MetricReport evaluate_matching(const std::vector<int>& match_assignment,
                               const std::vector<std::vector<Candidate>>& match_prob,
                               const std::vector<double>& inclusion_prob,
                               const ScenarioTruth& truth);

// Rank-sum AUC with half-weight ties; nullopt if either class is empty.
std::optional<double> rank_auc(const std::vector<double>& scores,
                               const std::vector<int>& labels);

std::vector<char> matched_scope(const ProblemInput& input);

}  // namespace baum

#endif
