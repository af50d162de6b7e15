#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <map>

#include "baum/sampler.hpp"

using namespace baum;

namespace {

// One metabolite, one feature forced onto it.
ProblemInput single_pair_input(double r) {
  ProblemInput in;
  in.feature_stats = {r};
  in.candidates = {{{0, 1.0}}};
  in.network = Network(1);
  in.feature_ids = {"f0"};
  in.metabolite_ids = {"m0"};
  return in;
}

Hyperparameters loose_hp() {
  Hyperparameters hp;
  hp.a1 = 3;
  hp.b1 = 3;
  hp.a2 = 3;
  hp.b2 = 3;
  hp.a3 = 3;
  hp.a4 = 3;
  hp.b4 = 3;
  hp.a5 = 3;
  hp.b5 = 3;
  return hp;
}

// Exhaustive z posterior given fixed eta, eta0, sigma2, lambda.
std::vector<double> enumerate_z_posterior(const ProblemInput& input,
                                          const Hyperparameters& hp,
                                          const ChainState& st) {
  const int k = input.n_metabolites();
  std::vector<std::vector<int>> matched(k);
  for (int i = 0; i < input.n_features(); ++i) matched[st.lambda[i]].push_back(i);
  std::vector<double> logw(1u << k);
  std::vector<int> z(k);
  for (std::uint32_t s = 0; s < logw.size(); ++s) {
    for (int j = 0; j < k; ++j) z[j] = (s >> j) & 1;
    double lw = potts_log_prior(z, hp, input.network);
    for (int j = 0; j < k; ++j)
      for (int i : matched[j])
        lw += normal_logpdf(input.feature_stats[i], z[j] ? st.eta[j] : st.eta0, st.sigma2);
    logw[s] = lw;
  }
  double norm = log_sum_exp(logw);
  std::vector<double> p(logw.size());
  for (size_t s = 0; s < p.size(); ++s) p[s] = std::exp(logw[s] - norm);
  return p;
}

}  // namespace

TEST_CASE("update_lambda: single candidate always chosen") {
  auto in = single_pair_input(0.0);
  GibbsChain chain(in, loose_hp(), 1);
  for (int t = 0; t < 50; ++t) {
    chain.update_lambda();
    CHECK(chain.state().lambda[0] == 0);
  }
}

TEST_CASE("update_lambda: symmetric candidates split evenly") {
  ProblemInput in;
  in.feature_stats = {1.0};
  in.candidates = {{{0, 0.5}, {1, 0.5}}};
  in.network = Network(2);
  GibbsChain chain(in, loose_hp(), 2);
  chain.state().z = {0, 0};
  chain.state().eta0 = 0.0;
  chain.state().sigma2 = 1.0;
  int first = 0;
  const int n = 10000;
  for (int t = 0; t < n; ++t) {
    chain.update_lambda();
    first += chain.state().lambda[0] == 0;
  }
  CHECK(std::abs(static_cast<double>(first) / n - 0.5) < 0.02);
}

TEST_CASE("update_lambda: dominating likelihood wins") {
  ProblemInput in;
  in.feature_stats = {10.0};
  in.candidates = {{{0, 0.5}, {1, 0.5}}};
  in.network = Network(2);
  GibbsChain chain(in, loose_hp(), 3);
  chain.state().z = {1, 1};
  chain.state().eta = {0.0, 10.0};
  chain.state().sigma2 = 1.0;
  int second = 0;
  const int n = 10000;
  for (int t = 0; t < n; ++t) {
    chain.update_lambda();
    second += chain.state().lambda[0] == 1;
  }
  CHECK(static_cast<double>(second) / n >= 0.999);
}

TEST_CASE("update_z: no data, symmetric prior is uniform") {
  ProblemInput in;
  in.feature_stats = {};
  in.candidates = {};
  in.network = Network(1);
  auto hp = loose_hp();
  hp.pi0 = hp.pi1 = 0.5;
  hp.rho0 = hp.rho1 = 0.0;
  GibbsChain chain(in, hp, 4);
  int ones = 0;
  const int n = 10000;
  for (int t = 0; t < n; ++t) {
    chain.update_z();
    ones += chain.state().z[0];
  }
  CHECK(std::abs(static_cast<double>(ones) / n - 0.5) < 0.02);
}

TEST_CASE("update_z: strong likelihood forces alternative") {
  auto in = single_pair_input(10.0);
  auto hp = loose_hp();
  hp.pi0 = hp.pi1 = 0.5;
  GibbsChain chain(in, hp, 5);
  chain.state().eta = {10.0};
  chain.state().eta0 = 0.0;
  chain.state().sigma2 = 1.0;
  int ones = 0;
  const int n = 10000;
  for (int t = 0; t < n; ++t) {
    chain.update_z();
    ones += chain.state().z[0];
  }
  CHECK(static_cast<double>(ones) / n >= 0.999);
}

TEST_CASE("update_z: 3-node path matches exhaustive enumeration (no data)") {
  ProblemInput in;
  in.feature_stats = {};
  in.candidates = {};
  in.network = Network(3, {{0, 1}, {1, 2}});
  auto hp = loose_hp();
  hp.pi1 = 0.3;
  hp.pi0 = 0.7;
  hp.rho0 = hp.rho1 = 0.4;
  GibbsChain chain(in, hp, 6);
  auto target = enumerate_z_posterior(in, hp, chain.state());
  std::vector<double> freq(8, 0.0);
  const int n = 100000;
  for (int t = 0; t < n; ++t) {
    chain.update_z();
    const auto& z = chain.state().z;
    freq[z[0] | (z[1] << 1) | (z[2] << 2)] += 1.0;
  }
  double tv = 0;
  for (int s = 0; s < 8; ++s) tv += std::abs(freq[s] / n - target[s]);
  CHECK(tv / 2 < 0.02);
}

TEST_CASE("update_z: SW matches enumeration with data and fixed scores") {
  ProblemInput in;
  in.feature_stats = {1.2, 4.0, -0.3};
  in.candidates = {{{0, 1.0}}, {{1, 1.0}}, {{3, 1.0}}};
  in.network = Network(4, {{0, 1}, {1, 2}, {2, 3}});
  auto hp = loose_hp();
  hp.pi1 = 0.4;
  hp.pi0 = 0.6;
  hp.rho0 = hp.rho1 = 0.3;
  GibbsChain chain(in, hp, 7);
  chain.set_lambda({0, 1, 3});
  chain.state().eta = {3.0, 3.0, 3.0, 3.0};
  chain.state().eta0 = 0.0;
  chain.state().sigma2 = 1.0;
  auto target = enumerate_z_posterior(in, hp, chain.state());
  std::vector<double> freq(16, 0.0);
  const int n = 200000;
  for (int t = 0; t < n; ++t) {
    chain.update_z();
    const auto& z = chain.state().z;
    freq[z[0] | (z[1] << 1) | (z[2] << 2) | (z[3] << 3)] += 1.0;
  }
  double tv = 0;
  for (int s = 0; s < 16; ++s) tv += std::abs(freq[s] / n - target[s]);
  CHECK(tv / 2 < 0.02);
}

TEST_CASE("update_eta0: prior draw when no null-matched features") {
  auto in = single_pair_input(5.0);
  GibbsChain chain(in, loose_hp(), 8);
  chain.state().z = {1};  // feature sits on an alternative metabolite
  chain.state().gamma0 = 2.0;
  RunningMoments mom;
  for (int t = 0; t < 100000; ++t) {
    chain.update_eta0();
    mom.push(chain.state().eta0);
  }
  double se = std::sqrt(2.0 / mom.n);
  CHECK(std::abs(mom.mean - 0.0) < 3 * se);
  CHECK(mom.variance() == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("update_eta0: conjugate posterior N(1, 0.5)") {
  auto in = single_pair_input(2.0);
  GibbsChain chain(in, loose_hp(), 9);
  chain.state().z = {0};
  chain.state().gamma0 = 1.0;
  chain.state().sigma2 = 1.0;
  RunningMoments mom;
  for (int t = 0; t < 100000; ++t) {
    chain.update_eta0();
    mom.push(chain.state().eta0);
  }
  double se = std::sqrt(0.5 / mom.n);
  CHECK(std::abs(mom.mean - 1.0) < 3 * se);
  CHECK(mom.variance() == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("update_eta: conjugate posterior N(2, 0.5)") {
  auto in = single_pair_input(4.0);
  auto hp = loose_hp();
  hp.mu = {0.0};
  GibbsChain chain(in, hp, 10);
  chain.state().z = {1};
  chain.state().m = {0.0};
  chain.state().gamma = {1.0};
  chain.state().sigma2 = 1.0;
  RunningMoments mom;
  for (int t = 0; t < 100000; ++t) {
    chain.update_eta();
    mom.push(chain.state().eta[0]);
  }
  double se = std::sqrt(0.5 / mom.n);
  CHECK(std::abs(mom.mean - 2.0) < 3 * se);
  CHECK(mom.variance() == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("update_eta: z = 0 draws from the cluster prior") {
  auto in = single_pair_input(4.0);
  auto hp = loose_hp();
  hp.mu = {-1.5};
  GibbsChain chain(in, hp, 11);
  chain.state().z = {0};
  chain.state().m = {-1.5};
  chain.state().gamma = {0.7};
  RunningMoments mom;
  for (int t = 0; t < 10000; ++t) {
    chain.update_eta();
    mom.push(chain.state().eta[0]);
  }
  double se = std::sqrt(0.7 / mom.n);
  CHECK(std::abs(mom.mean - (-1.5)) < 3 * se);
}

TEST_CASE("update_clusters: G = 1 pins every K") {
  auto in = single_pair_input(1.0);
  GibbsChain chain(in, loose_hp(), 12);
  for (int t = 0; t < 20; ++t) {
    chain.sweep();
    CHECK(chain.state().K[0] == 0);
    CHECK(chain.state().stick_p == std::vector<double>{1.0});
  }
}

TEST_CASE("update_clusters: conjugate cluster mean N(8/3, 1/3)") {
  ProblemInput in;
  in.feature_stats = {0.0, 0.0};
  in.candidates = {{{0, 1.0}}, {{1, 1.0}}};
  in.network = Network(2);
  auto hp = loose_hp();
  hp.mu = {0.0};
  GibbsChain chain(in, hp, 13);
  RunningMoments mom;
  for (int t = 0; t < 100000; ++t) {
    chain.state().eta = {3.0, 5.0};
    chain.state().K = {0, 0};
    chain.state().gamma = {1.0};
    chain.state().sigma_g2 = {1.0};
    chain.state().beta = {1.0};
    chain.update_clusters();
    mom.push(chain.state().m[0]);
    // keep gamma fixed for the next iteration's mean draw
  }
  double se = std::sqrt((1.0 / 3.0) / mom.n);
  CHECK(std::abs(mom.mean - 8.0 / 3.0) < 4 * se);
  CHECK(mom.variance() == doctest::Approx(1.0 / 3.0).epsilon(0.05));
}

TEST_CASE("update_variances: residuals (1,1) with a1=b1=1 give IG(2,2)") {
  ProblemInput in;
  in.feature_stats = {1.0, 1.0};
  in.candidates = {{{0, 1.0}}, {{0, 1.0}}};
  in.network = Network(1);
  auto hp = loose_hp();
  hp.a1 = 1;
  hp.b1 = 1;
  GibbsChain chain(in, hp, 14);
  chain.state().z = {0};
  chain.state().eta0 = 0.0;  // residuals 1, 1
  RunningMoments mom;
  for (int t = 0; t < 100000; ++t) {
    chain.state().eta0 = 0.0;
    chain.update_variances();
    mom.push(chain.state().sigma2);
  }
  // IG(2,2): mean = rate/(shape-1) = 2, se from empirical variance
  double se = std::sqrt(mom.variance() / mom.n);
  CHECK(std::abs(mom.mean - 2.0) < 3 * se);
}

TEST_CASE("update_variances: eta0 = 0 gives gamma0 ~ IG(a2 + 1/2, b2)") {
  auto in = single_pair_input(0.0);
  auto hp = loose_hp();
  hp.a2 = 4;
  hp.b2 = 6;
  GibbsChain chain(in, hp, 15);
  RunningMoments mom;
  for (int t = 0; t < 100000; ++t) {
    chain.state().eta0 = 0.0;
    chain.update_variances();
    mom.push(chain.state().gamma0);
  }
  double expected = 6.0 / (4.5 - 1.0);
  double se = std::sqrt(mom.variance() / mom.n);
  CHECK(std::abs(mom.mean - expected) < 3 * se);
}

TEST_CASE("run_chain: identical seeds give identical summaries") {
  ProblemInput in;
  in.feature_stats = {0.5, 9.5, 1.0};
  in.candidates = {{{0, 0.5}, {1, 0.5}}, {{1, 1.0}}, {{0, 0.3}, {2, 0.7}}};
  in.network = Network(3, {{0, 1}, {1, 2}});
  in.feature_ids = {"a", "b", "c"};
  in.metabolite_ids = {"x", "y", "z"};
  ChainConfig cfg;
  cfg.n_burnin = 50;
  cfg.n_iter = 200;
  cfg.rng_seed = 99;
  auto hp = loose_hp();
  auto [s1, t1] = run_chain(in, hp, cfg);
  auto [s2, t2] = run_chain(in, hp, cfg);
  CHECK(s1.inclusion_prob == s2.inclusion_prob);
  CHECK(s1.mean_sigma2 == s2.mean_sigma2);
  REQUIRE(t1.size() == t2.size());
  for (size_t i = 0; i < t1.size(); ++i) CHECK(t1[i].log_joint == t2[i].log_joint);
}

TEST_CASE("run_chain: lambda-hat rows sum to 1 and log joint stays finite") {
  ProblemInput in;
  in.feature_stats = {0.5, 9.5, 1.0, 10.2};
  in.candidates = {
      {{0, 0.5}, {1, 0.5}}, {{1, 0.5}, {2, 0.5}}, {{0, 1.0}}, {{2, 0.2}, {3, 0.8}}};
  in.network = Network(4, {{0, 1}, {1, 2}, {2, 3}});
  ChainConfig cfg;
  cfg.n_burnin = 100;
  cfg.n_iter = 500;
  cfg.rng_seed = 5;
  auto [s, trace] = run_chain(in, loose_hp(), cfg);
  for (const auto& row : s.match_prob) {
    double sum = 0;
    for (const auto& c : row) sum += c.q;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }
  for (const auto& t : trace) CHECK(std::isfinite(t.log_joint));
}

TEST_CASE("run_chain: p = k = 1 far-null and far-alternative posteriors") {
  Hyperparameters hp = loose_hp();
  hp.G = 1;
  hp.mu = {10.0};
  hp.degenerate_mean = true;
  hp.pi0 = hp.pi1 = 0.5;
  // tight priors hold the variances near sigma2 ~ 1, gamma0 small
  hp.a1 = 1e4;
  hp.b1 = 1e4;
  hp.a2 = 1e4;
  hp.b2 = 1.0;
  hp.a3 = 1e4;
  hp.a4 = 1e4;
  hp.b4 = 1.0;
  ChainConfig cfg;
  cfg.n_burnin = 200;
  cfg.n_iter = 2000;
  cfg.rng_seed = 21;

  auto [null_summary, tn] = run_chain(single_pair_input(0.0), hp, cfg);
  CHECK(null_summary.inclusion_prob[0] < 0.05);

  auto [alt_summary, ta] = run_chain(single_pair_input(10.0), hp, cfg);
  CHECK(alt_summary.inclusion_prob[0] > 0.95);
}
