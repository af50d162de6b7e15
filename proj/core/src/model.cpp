#include "baum/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace baum {

double log_likelihood_feature(double r_i, double eta_star, double sigma2) {
  return normal_logpdf(r_i, eta_star, sigma2);
}

std::vector<double> neighborhood_weights(const Network& network, const Hyperparameters& hp) {
  const int k = network.node_count();
  std::vector<double> wt(k, 1.0);
  for (int j = 0; j < k; ++j) {
    const auto& nb = network.neighbors(j);
    if (nb.empty()) continue;  // isolated node: weight 1
    double s = 0;
    for (int l : nb) s += hp.node_weight(l);
    wt[j] = s / static_cast<double>(nb.size());
  }
  return wt;
}

double potts_log_prior(const std::vector<int>& z, const Hyperparameters& hp,
                       const Network& network) {
  const int k = network.node_count();
  if (static_cast<int>(z.size()) != k)
    throw std::domain_error("potts_log_prior: z length mismatch");
  if (!hp.w.empty() && static_cast<int>(hp.w.size()) != k)
    throw std::domain_error("potts_log_prior: weight length mismatch");
  const double log_pi[2] = {std::log(hp.pi0), std::log(hp.pi1)};
  const double rho[2] = {hp.rho0, hp.rho1};
  std::vector<double> wtilde = neighborhood_weights(network, hp);
  double total = 0;
  for (int j = 0; j < k; ++j) total += wtilde[j] * log_pi[z[j]];
  for (auto [j, l] : network.edges()) {
    if (z[j] != z[l]) continue;
    // each endpoint contributes rho_{z} * w_other
    total += rho[z[j]] * hp.node_weight(l) + rho[z[l]] * hp.node_weight(j);
  }
  return total;
}

std::vector<std::string> validate_input(const ProblemInput& input) {
  std::vector<std::string> violations;
  auto flag = [&](const std::string& s) { violations.push_back(s); };
  const int p = input.n_features();
  const int k = input.n_metabolites();
  if (p < 1) flag("no features");
  if (k < 1) flag("no metabolites");
  if (static_cast<int>(input.candidates.size()) != p)
    flag("candidate rows do not match feature count");
  if (!input.feature_ids.empty() && static_cast<int>(input.feature_ids.size()) != p)
    flag("feature_ids length mismatch");
  if (!input.metabolite_ids.empty() && static_cast<int>(input.metabolite_ids.size()) != k)
    flag("metabolite_ids length mismatch");
  for (int i = 0; i < std::min<int>(p, input.candidates.size()); ++i) {
    const auto& row = input.candidates[i];
    double sum = 0;
    bool any_pos = false;
    for (const auto& c : row) {
      if (c.metabolite < 0 || c.metabolite >= k) {
        std::ostringstream os;
        os << "feature " << i << ": candidate metabolite index out of range";
        flag(os.str());
        continue;
      }
      if (c.q < 0) {
        std::ostringstream os;
        os << "feature " << i << ": negative q";
        flag(os.str());
      }
      if (c.q > 0) any_pos = true;
      sum += c.q;
    }
    if (!any_pos) {
      std::ostringstream os;
      os << "feature " << i << ": no candidate with positive q";
      flag(os.str());
    } else if (std::abs(sum - 1.0) > 1e-9) {
      std::ostringstream os;
      os << "feature " << i << ": q row sums to " << sum;
      flag(os.str());
    }
    if (!std::isfinite(input.feature_stats[i])) {
      std::ostringstream os;
      os << "feature " << i << ": non-finite statistic";
      flag(os.str());
    }
  }
  // Network class construction already rejects self-loops, duplicates and
  // asymmetric adjacency cannot be represented; nothing further to check there.
  return violations;
}

void validate_hyperparameters(const Hyperparameters& hp, int k) {
  auto require = [](bool ok, const char* msg) {
    if (!ok) throw std::domain_error(msg);
  };
  require(hp.a1 > 0 && hp.b1 > 0 && hp.a2 > 0 && hp.b2 > 0 && hp.a3 > 0 && hp.a4 > 0 &&
              hp.b4 > 0 && hp.a5 > 0 && hp.b5 > 0,
          "hyperparameters: shape/rate parameters must be positive");
  require(hp.G >= 1, "hyperparameters: G must be >= 1");
  require(static_cast<int>(hp.mu.size()) == hp.G, "hyperparameters: length(mu) != G");
  require(hp.pi0 > 0 && hp.pi0 < 1 && hp.pi1 > 0 && hp.pi1 < 1 &&
              std::abs(hp.pi0 + hp.pi1 - 1.0) < 1e-9,
          "hyperparameters: pi0, pi1 must lie in (0,1) and sum to 1");
  require(hp.rho0 >= 0 && hp.rho1 >= 0, "hyperparameters: rho must be >= 0");
  require(hp.w.empty() || static_cast<int>(hp.w.size()) == k,
          "hyperparameters: length(w) != k");
  for (double wj : hp.w) require(wj >= 0, "hyperparameters: negative node weight");
  require(hp.tau > 0, "hyperparameters: tau must be > 0");
  require(hp.alpha_fdr > 0 && hp.alpha_fdr < 1, "hyperparameters: alpha_fdr out of (0,1)");
  require(hp.n_burnin >= 0 && hp.n_iter >= 1, "hyperparameters: bad iteration counts");
  if (hp.degenerate_mean)
    require(hp.G == 1, "hyperparameters: degenerate_mean requires G = 1");
}

}  // namespace baum
