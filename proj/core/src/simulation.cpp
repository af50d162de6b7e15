#include "baum/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "baum/io.hpp"

namespace baum {

Hyperparameters default_hyperparameters(const std::string& name) {
  Hyperparameters hp;
  hp.a1 = 2e4;
  hp.b1 = 1e4;
  hp.a2 = 1e4;
  hp.b2 = 1.0;
  hp.a3 = 1e4;
  hp.a4 = 1e4;
  hp.b4 = 1.0;
  hp.rho0 = hp.rho1 = 0.1;
  hp.tau = 1.0;
  hp.alpha_fdr = 0.2;
  if (name == "GN1" || name == "GN2") {
    hp.G = 1;
    hp.mu = {10.0};
    hp.degenerate_mean = true;
    hp.pi1 = 0.15;
  } else if (name == "RN1") {
    hp.G = 1;
    hp.mu = {10.0};
    hp.degenerate_mean = true;
    hp.pi1 = 0.2;
  } else if (name == "RN2") {
    hp.G = 21;
    hp.mu.resize(21);
    for (int g = 0; g < 21; ++g) hp.mu[g] = 5.0 + g;
    hp.degenerate_mean = false;
    hp.a5 = 1e4;
    hp.b5 = 1.0;
    hp.pi1 = 0.4;
  } else {
    throw std::domain_error("default_hyperparameters: unknown scenario " + name);
  }
  hp.pi0 = 1.0 - hp.pi1;
  return hp;
}

Hyperparameters degenerate_mean_handling(Hyperparameters hp) {
  if (hp.degenerate_mean && hp.G != 1)
    throw std::domain_error("degenerate_mean_handling: degenerate flag requires G = 1");
  return hp;
}

ScenarioConfig default_scenario_config(const std::string& name, std::uint64_t rng_seed) {
  ScenarioConfig cfg;
  cfg.name = name;
  cfg.rng_seed = rng_seed;
  cfg.hp = default_hyperparameters(name);
  if (name == "GN1") {
    cfg.p = cfg.k = 1000;
    cfg.unmatched_fraction = 0.0;
  } else if (name == "GN2") {
    cfg.p = cfg.k = 1000;
    cfg.unmatched_fraction = 0.5;
  } else if (name == "RN1" || name == "RN2") {
    cfg.p = 1153;
    cfg.k = 1093;
    cfg.load_network = true;
    cfg.unmatched_fraction = 0.13;
    if (name == "RN2") {
      cfg.score_law = ScoreLaw::ChiSquared;
      cfg.score_df = 10.0;
    }
  } else {
    throw std::domain_error("default_scenario_config: unknown scenario " + name);
  }
  return cfg;
}

namespace {

// P(z_j = 1) = min(1, c * rank_j) with c solved so the expected alternative
// count equals pi1 * k; rank is the ascending degree rank.
std::vector<double> degree_label_probs(const Network& net, double pi1) {
  const int k = net.node_count();
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return net.degree(a) < net.degree(b); });
  std::vector<double> rank(k);
  for (int pos = 0; pos < k; ++pos) rank[order[pos]] = pos + 1.0;
  const double target = pi1 * k;
  double lo = 0, hi = 2.0;
  auto expected = [&](double c) {
    double s = 0;
    for (double r : rank) s += std::min(1.0, c * r);
    return s;
  };
  while (expected(hi) < target) hi *= 2;
  for (int it = 0; it < 100; ++it) {
    double mid = 0.5 * (lo + hi);
    (expected(mid) < target ? lo : hi) = mid;
  }
  double c = 0.5 * (lo + hi);
  std::vector<double> probs(k);
  for (int j = 0; j < k; ++j) probs[j] = std::min(1.0, c * rank[j]);
  return probs;
}

}  // namespace

std::pair<ProblemInput, ScenarioTruth> build_scenario(const ScenarioConfig& cfg) {
  if (cfg.p < 1 || cfg.k < 1) throw std::domain_error("build_scenario: p, k must be >= 1");
  if (cfg.unmatched_fraction < 0 || cfg.unmatched_fraction >= 1)
    throw std::domain_error("build_scenario: unmatched fraction out of [0,1)");
  Rng rng(cfg.rng_seed);

  ProblemInput input;
  ScenarioTruth truth;

  int k = cfg.k;
  if (cfg.load_network) {
    auto [net, ids] = load_network_file(cfg.network_path);
    input.network = std::move(net);
    input.metabolite_ids = std::move(ids);
    k = input.network.node_count();
  } else {
    input.network = generate_barabasi_albert(k, cfg.ba_m_attach, cfg.rng_seed ^ 0x9e3779b97f4a7c15ull);
    input.metabolite_ids.resize(k);
    for (int j = 0; j < k; ++j) input.metabolite_ids[j] = "M" + std::to_string(j);
  }

  // class labels by degree
  auto probs = degree_label_probs(input.network, cfg.hp.pi1);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  truth.true_z.resize(k);
  for (int j = 0; j < k; ++j) truth.true_z[j] = unif(rng) < probs[j] ? 1 : 0;

  truth.true_scores.assign(k, 0.0);
  for (int j = 0; j < k; ++j) {
    if (!truth.true_z[j]) continue;
    if (cfg.score_law == ScoreLaw::Normal) {
      truth.true_scores[j] = sample_normal(cfg.score_mean, cfg.score_var, rng);
    } else {
      std::chi_squared_distribution<double> chi(cfg.score_df);
      truth.true_scores[j] = chi(rng);
    }
  }

  const int p = cfg.p;
  input.feature_ids.resize(p);
  for (int i = 0; i < p; ++i) input.feature_ids[i] = "F" + std::to_string(i);

  if (!cfg.matches_path.empty()) {
    // Real candidate structure; truth matches drawn from each feature's candidates.
    input.candidates =
        load_matches_file(cfg.matches_path, input.feature_ids, input.metabolite_ids);
    if (static_cast<int>(input.candidates.size()) != static_cast<int>(input.feature_ids.size()))
      throw std::runtime_error("build_scenario: matches file feature count mismatch");
    truth.true_match.resize(input.candidates.size());
    for (size_t i = 0; i < input.candidates.size(); ++i) {
      std::vector<double> q(input.candidates[i].size());
      for (size_t c = 0; c < q.size(); ++c) q[c] = input.candidates[i][c].q;
      truth.true_match[i] = input.candidates[i][sample_categorical(q, rng)].metabolite;
    }
  } else {
    // Excluded metabolites never appear in any candidate list.
    std::vector<int> eligible(k);
    std::iota(eligible.begin(), eligible.end(), 0);
    std::shuffle(eligible.begin(), eligible.end(), rng);
    int n_excluded = static_cast<int>(std::floor(cfg.unmatched_fraction * k));
    eligible.resize(k - n_excluded);
    if (eligible.empty()) throw std::domain_error("build_scenario: no eligible metabolites");

    // First features cover each eligible metabolite once, the rest draw uniformly.
    std::vector<int> coverage(eligible);
    std::shuffle(coverage.begin(), coverage.end(), rng);
    truth.true_match.resize(p);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(eligible.size()) - 1);
    for (int i = 0; i < p; ++i)
      truth.true_match[i] =
          i < static_cast<int>(coverage.size()) ? coverage[i] : eligible[pick(rng)];

    input.candidates.resize(p);
    for (int i = 0; i < p; ++i) {
      int total = 1 + sample_categorical(cfg.multiplicity, rng);
      total = std::min<int>(total, static_cast<int>(eligible.size()));
      std::set<int> cand{truth.true_match[i]};
      while (static_cast<int>(cand.size()) < total) cand.insert(eligible[pick(rng)]);
      double q = 1.0 / cand.size();
      for (int j : cand) input.candidates[i].push_back({j, q});
    }
  }

  input.feature_stats.resize(input.candidates.size());
  for (size_t i = 0; i < input.candidates.size(); ++i)
    input.feature_stats[i] =
        truth.true_scores[truth.true_match[i]] + sample_normal(0.0, cfg.sigma_sim * cfg.sigma_sim, rng);

  return {std::move(input), std::move(truth)};
}

}  // namespace baum
