#ifndef BAUM_SAMPLER_HPP
#define BAUM_SAMPLER_HPP

#include <cstdint>
#include <vector>

#include "baum/model.hpp"

namespace baum {

struct ChainConfig {
  int n_burnin = 1000;
  int n_iter = 4000;
  std::uint64_t rng_seed = 0;
  int thinning = 1;
};

struct TraceRecord {
  int iteration = 0;
  double sigma2 = 0, gamma0 = 0, eta0 = 0;
  int n_alt = 0;
  double log_joint = 0;
};

// One Gibbs chain. Owns its state and RNG; a sweep runs the full conditionals
// in the fixed order lambda -> z -> eta0 -> eta -> clusters -> variances.
class GibbsChain {
 public:
  GibbsChain(const ProblemInput& input, const Hyperparameters& hp, std::uint64_t rng_seed);

  void update_lambda();
  void update_z();
  void update_eta0();
  void update_eta();
  void update_clusters();
  void update_variances();
  void sweep();

  // Log joint density up to the Potts normalizing constant.
  double log_joint() const;

  // Overwrites lambda and rebuilds the per-metabolite feature lists.
  void set_lambda(const std::vector<int>& lambda);

  ChainState& state() { return state_; }
  const ChainState& state() const { return state_; }
  Rng& rng() { return rng_; }
  const ProblemInput& input() const { return input_; }

  // Replaces feature_stats with a draw from the data model given the current
  // state (generative step, used by joint-distribution tests).
  void resample_data();

  // Draws every latent variable from its prior; requires k small enough to
  // enumerate the Potts prior exactly (k <= 20).
  void draw_from_prior();

 private:
  void refresh_matched_features();
  void draw_sticks_from_prior();

  ProblemInput input_;  // owned copy: resample_data mutates feature_stats
  Hyperparameters hp_;
  ChainState state_;
  Rng rng_;
  std::vector<double> wtilde_;
  std::vector<std::vector<int>> matched_features_;  // features per metabolite
};

PosteriorSummary init_summary(const ProblemInput& input);

std::pair<PosteriorSummary, std::vector<TraceRecord>> run_chain(const ProblemInput& input,
                                                                const Hyperparameters& hp,
                                                                const ChainConfig& cfg);

// Exact draw from the Potts prior by enumeration; k <= 20.
std::vector<int> draw_z_prior_exact(const Network& network, const Hyperparameters& hp,
                                    Rng& rng);

}  // namespace baum

#endif
