#ifndef BAUM_SIMULATION_HPP
#define BAUM_SIMULATION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "baum/model.hpp"

namespace baum {

enum class ScoreLaw { Normal, ChiSquared };

struct ScenarioConfig {
  std::string name = "GN1";  // GN1 | GN2 | RN1 | RN2 | custom
  int p = 1000, k = 1000;
  bool load_network = false;         // RN scenarios load files instead of generating
  std::string network_path;          // edge-list TSV when load_network
  std::string matches_path;          // candidate TSV when loading real matchings
  ScoreLaw score_law = ScoreLaw::Normal;
  double score_mean = 10.0, score_var = 1.0;  // Normal law
  double score_df = 10.0;                     // ChiSquared law
  double unmatched_fraction = 0.0;
  // Distribution over total candidate counts 1..5 per feature.
  std::vector<double> multiplicity = {0.50, 0.20, 0.12, 0.05, 0.13};
  double sigma_sim = 1.0;
  int ba_m_attach = 1;
  std::uint64_t rng_seed = 0;
  Hyperparameters hp;
};

struct ScenarioTruth {
  std::vector<int> true_z;
  std::vector<double> true_scores;
  std::vector<int> true_match;  // metabolite index per feature
};

Hyperparameters default_hyperparameters(const std::string& name);
ScenarioConfig default_scenario_config(const std::string& name, std::uint64_t rng_seed);

// Validates the degenerate-mean configuration (G must be 1).
Hyperparameters degenerate_mean_handling(Hyperparameters hp);

std::pair<ProblemInput, ScenarioTruth> build_scenario(const ScenarioConfig& cfg);

}  // namespace baum

#endif
