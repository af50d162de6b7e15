#ifndef BAUM_MODEL_HPP
#define BAUM_MODEL_HPP

#include <string>
#include <vector>

#include "baum/network.hpp"
#include "baum/stats.hpp"

namespace baum {

struct Candidate {
  int metabolite = -1;
  double q = 0.0;
};

struct ProblemInput {
  std::vector<double> feature_stats;               // r_i
  std::vector<std::vector<Candidate>> candidates;  // sparse rows of q, one per feature
  Network network;                                 // adjacency C over metabolites
  std::vector<std::string> feature_ids;
  std::vector<std::string> metabolite_ids;

  int n_features() const { return static_cast<int>(feature_stats.size()); }
  int n_metabolites() const { return network.node_count(); }
};

struct Hyperparameters {
  double a1 = 2e4, b1 = 1e4;  // IG prior on sigma^2
  double a2 = 1e4, b2 = 1.0;  // IG prior on gamma0
  double a3 = 1e4;            // IG shape on gamma_g
  double a4 = 1e4, b4 = 1.0;  // Gamma prior on beta_g
  double a5 = 1e4, b5 = 1.0;  // IG prior on sigma_g^2
  int G = 1;
  std::vector<double> mu{10.0};  // cluster prior means, length G
  bool degenerate_mean = false;  // G == 1 with m_1 pinned at mu[0]
  double pi0 = 0.85, pi1 = 0.15;
  double rho0 = 0.1, rho1 = 0.1;
  std::vector<double> w;  // node weights; empty means all ones
  double tau = 1.0;       // stick-breaking t parameter
  double alpha_fdr = 0.2;
  int n_burnin = 1000, n_iter = 4000;

  double node_weight(int j) const { return w.empty() ? 1.0 : w[j]; }
};

struct ChainState {
  std::vector<int> lambda;   // matched metabolite index per feature
  std::vector<int> z;        // 0/1 class label per metabolite
  double eta0 = 0.0;
  std::vector<double> eta;   // alternative score per metabolite
  std::vector<int> K;        // cluster index in 0..G-1 per metabolite
  std::vector<double> stick_p;
  std::vector<double> m, gamma;          // cluster means / variances
  double sigma2 = 1.0, gamma0 = 1.0;
  std::vector<double> beta, sigma_g2;

  double score(int j) const { return z[j] ? eta[j] : eta0; }
};

struct PosteriorSummary {
  std::vector<double> inclusion_prob;               // u_j
  std::vector<std::vector<Candidate>> match_prob;   // lambda-hat rows on candidate support
  double mean_sigma2 = 0, mean_gamma0 = 0, mean_eta0 = 0;
};

double log_likelihood_feature(double r_i, double eta_star, double sigma2);

// Average neighborhood weight per node; 1 for isolated nodes.
std::vector<double> neighborhood_weights(const Network& network, const Hyperparameters& hp);

// Log of the unnormalized Potts mass.
double potts_log_prior(const std::vector<int>& z, const Hyperparameters& hp,
                       const Network& network);

std::vector<std::string> validate_input(const ProblemInput& input);

void validate_hyperparameters(const Hyperparameters& hp, int k);

}  // namespace baum

#endif
