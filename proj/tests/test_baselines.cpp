#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "baum/baselines.hpp"
#include "baum/stats.hpp"

using namespace baum;

TEST_CASE("rank_auc worked examples") {
  // perfect separation
  CHECK(*rank_auc({0.1, 0.2, 0.8, 0.9}, {0, 0, 1, 1}) == doctest::Approx(1.0));
  // perfect anti-separation
  CHECK(*rank_auc({0.9, 0.8, 0.1, 0.2}, {0, 0, 1, 1}) == doctest::Approx(0.0));
  // full ties -> 0.5
  CHECK(*rank_auc({0.5, 0.5, 0.5, 0.5}, {0, 1, 0, 1}) == doctest::Approx(0.5));
  // single class -> undefined
  CHECK(!rank_auc({0.1, 0.2}, {1, 1}).has_value());
}

TEST_CASE("rank_auc is invariant to monotone transforms") {
  Rng rng(41);
  std::uniform_real_distribution<double> unif(0, 1);
  std::vector<double> s(50);
  std::vector<int> y(50);
  for (int i = 0; i < 50; ++i) {
    s[i] = unif(rng);
    y[i] = rng() % 2;
  }
  auto base = *rank_auc(s, y);
  auto t = s;
  for (auto& v : t) v = std::exp(3 * v) - 7;
  CHECK(*rank_auc(t, y) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("rank_auc near 0.5 on random scores") {
  Rng rng(77);
  std::uniform_real_distribution<double> unif(0, 1);
  const int n = 20000;
  std::vector<double> s(n);
  std::vector<int> y(n);
  for (int i = 0; i < n; ++i) {
    s[i] = unif(rng);
    y[i] = rng() % 2;
  }
  CHECK(*rank_auc(s, y) == doctest::Approx(0.5).epsilon(0.04));
}

TEST_CASE("two-gaussian EM recovers a well-separated mixture") {
  Rng rng(55);
  std::vector<double> x;
  std::vector<int> label;
  for (int i = 0; i < 1500; ++i) {
    x.push_back(sample_normal(0.0, 1.0, rng));
    label.push_back(0);
  }
  for (int i = 0; i < 500; ++i) {
    x.push_back(sample_normal(8.0, 1.0, rng));
    label.push_back(1);
  }
  auto fit = fit_two_gaussian_em(x, 0.75);
  CHECK(fit.converged);
  CHECK(fit.pi0 == doctest::Approx(0.75).epsilon(0.05));
  CHECK(fit.mean0 == doctest::Approx(0.0).epsilon(0.2));
  CHECK(fit.mean1 == doctest::Approx(8.0).epsilon(0.05));
  // posterior classification accuracy on the training draws
  int correct = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    double l0 = std::log(fit.pi0) + normal_logpdf(x[i], fit.mean0, fit.var0);
    double l1 = std::log(1 - fit.pi0) + normal_logpdf(x[i], fit.mean1, fit.var1);
    correct += (l1 > l0 ? 1 : 0) == label[i];
  }
  CHECK(static_cast<double>(correct) / x.size() >= 0.95);
}

namespace {

ProblemInput mixed_input() {
  // 4 metabolites on a path; features 0-3 single-candidate, feature 4 ambiguous
  ProblemInput in;
  in.feature_stats = {0.1, 9.8, -0.4, 10.3, 5.0};
  in.candidates = {{{0, 1.0}}, {{1, 1.0}}, {{2, 1.0}}, {{3, 1.0}}, {{1, 0.5}, {2, 0.5}}};
  in.network = Network(4, {{0, 1}, {1, 2}, {2, 3}});
  in.feature_ids = {"f0", "f1", "f2", "f3", "f4"};
  in.metabolite_ids = {"m0", "m1", "m2", "m3"};
  return in;
}

}  // namespace

TEST_CASE("locfdr statistic is the candidate-weighted feature average") {
  auto in = mixed_input();
  auto res = locfdr_baseline(in, LocfdrWeights::Equal, nullptr, 0.8);
  REQUIRE(res.evaluated == std::vector<char>{1, 1, 1, 1});
  // feature weight is 1/|candidates|: the ambiguous feature counts half
  CHECK(res.statistic[0] == doctest::Approx(0.1));
  CHECK(res.statistic[1] == doctest::Approx((1.0 * 9.8 + 0.5 * 5.0) / 1.5));
  CHECK(res.statistic[2] == doctest::Approx((1.0 * -0.4 + 0.5 * 5.0) / 1.5));
  CHECK(res.statistic[3] == doctest::Approx(10.3));
}

TEST_CASE("posterior-weighted locfdr uses lambda-hat weights") {
  auto in = mixed_input();
  std::vector<std::vector<Candidate>> lam = {
      {{0, 1.0}}, {{1, 1.0}}, {{2, 1.0}}, {{3, 1.0}}, {{1, 0.9}, {2, 0.1}}};
  auto res = locfdr_baseline(in, LocfdrWeights::Posterior, &lam, 0.8);
  CHECK(res.statistic[1] == doctest::Approx((1.0 * 9.8 + 0.9 * 5.0) / 1.9));
  CHECK(res.statistic[2] == doctest::Approx((1.0 * -0.4 + 0.1 * 5.0) / 1.1));
}

TEST_CASE("equal and posterior weights coincide when all features are unambiguous") {
  ProblemInput in;
  in.feature_stats = {0.1, 9.8, -0.4, 10.3};
  in.candidates = {{{0, 1.0}}, {{1, 1.0}}, {{2, 1.0}}, {{3, 1.0}}};
  in.network = Network(4);
  std::vector<std::vector<Candidate>> lam = in.candidates;
  auto eq = locfdr_baseline(in, LocfdrWeights::Equal, nullptr, 0.8);
  auto po = locfdr_baseline(in, LocfdrWeights::Posterior, &lam, 0.8);
  CHECK(eq.statistic == po.statistic);
  CHECK(eq.selected == po.selected);
}

TEST_CASE("locfdr separates a strong synthetic signal") {
  Rng rng(91);
  const int k = 400;
  ProblemInput in;
  in.network = Network(k);
  std::vector<int> z(k);
  for (int j = 0; j < k; ++j) {
    z[j] = j < 60;  // 15% alternatives
    double score = z[j] ? 10.0 : 0.0;
    in.feature_stats.push_back(score + sample_normal(0.0, 1.0, rng));
    in.candidates.push_back({{j, 1.0}});
  }
  auto res = locfdr_baseline(in, LocfdrWeights::Equal, nullptr, 0.85);
  int tp = 0, fp = 0;
  for (int j = 0; j < k; ++j) {
    if (res.selected[j] && z[j]) ++tp;
    if (res.selected[j] && !z[j]) ++fp;
  }
  CHECK(tp >= 55);
  // the mean-lfdr rule targets 20% false among selected
  CHECK(fp <= (tp + fp) * 0.25);
}

TEST_CASE("evaluate_selection recounts the confusion matrix") {
  ScenarioTruth truth;
  truth.true_z = {1, 0, 1, 0, 1};
  std::vector<char> scope = {1, 1, 1, 1, 0};  // last metabolite unmatched
  std::vector<char> selected = {1, 0, 0, 1, 1};
  std::vector<double> scores = {0.9, 0.2, 0.4, 0.8, 0.99};
  auto rep = evaluate_selection(selected, scores, truth, scope);
  CHECK(rep.n_eval == 4);
  // within scope: TP=1 (m0), FN=1 (m2), FP=1 (m3), TN=1 (m1)
  CHECK(rep.acc == doctest::Approx(0.5));
  CHECK(rep.tpr == doctest::Approx(0.5));
  CHECK(rep.fpr == doctest::Approx(0.5));
  REQUIRE(rep.auc.has_value());
  // scores within scope: alt {0.9, 0.4}, null {0.2, 0.8} -> 3 of 4 pairs correct
  CHECK(*rep.auc == doctest::Approx(0.75));
}

TEST_CASE("evaluate_matching scores multi-candidate features only") {
  ScenarioTruth truth;
  truth.true_z = {1, 0, 0};
  truth.true_match = {0, 1, 0, 2};
  std::vector<std::vector<Candidate>> lam = {
      {{0, 0.8}, {1, 0.2}},  // assigned 0, true 0: correct
      {{1, 1.0}},            // single candidate: excluded
      {{0, 0.3}, {2, 0.7}},  // assigned 2 (null), true 0 (alt): wrong class
      {{1, 0.4}, {2, 0.6}},  // assigned 2, true 2: correct
  };
  std::vector<int> assign = {0, 1, 2, 2};
  std::vector<double> u = {0.9, 0.1, 0.1};
  auto rep = evaluate_matching(assign, lam, u, truth);
  CHECK(rep.n_eval == 3);
  CHECK(rep.acc == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("matched_scope flags metabolites with any candidate mass") {
  auto in = mixed_input();
  CHECK(matched_scope(in) == std::vector<char>{1, 1, 1, 1});
  ProblemInput sparse;
  sparse.feature_stats = {1.0};
  sparse.candidates = {{{2, 1.0}}};
  sparse.network = Network(4);
  CHECK(matched_scope(sparse) == std::vector<char>{0, 0, 1, 0});
}
