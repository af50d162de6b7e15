#include "baum/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace baum {

std::optional<double> rank_auc(const std::vector<double>& scores,
                               const std::vector<int>& labels) {
  int n1 = 0, n0 = 0;
  for (int l : labels) (l ? n1 : n0) += 1;
  if (n1 == 0 || n0 == 0) return std::nullopt;
  const int n = static_cast<int>(scores.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return scores[a] < scores[b]; });
  // average ranks over ties
  std::vector<double> rank(n);
  int i = 0;
  while (i < n) {
    int j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    double avg = 0.5 * (i + j - 1) + 1.0;
    for (int t = i; t < j; ++t) rank[order[t]] = avg;
    i = j;
  }
  double rank_sum1 = 0;
  for (int t = 0; t < n; ++t)
    if (labels[t]) rank_sum1 += rank[t];
  double u = rank_sum1 - n1 * (n1 + 1.0) / 2.0;
  return u / (static_cast<double>(n1) * n0);
}

GaussianMixtureFit fit_two_gaussian_em(const std::vector<double>& x, double pi0_init,
                                       int max_iter, double tol) {
  const int n = static_cast<int>(x.size());
  if (n < 2) throw std::domain_error("fit_two_gaussian_em: need >= 2 points");
  std::vector<double> sorted(x);
  std::sort(sorted.begin(), sorted.end());
  double top_mean = 0;
  int top_n = std::max(1, n / 10);
  for (int i = n - top_n; i < n; ++i) top_mean += sorted[i];
  top_mean /= top_n;

  GaussianMixtureFit fit{pi0_init, 0.0, 1.0, top_mean, 1.0, false};
  double prev_ll = -std::numeric_limits<double>::infinity();
  std::vector<double> resp(n);  // responsibility of component 1
  for (int it = 0; it < max_iter; ++it) {
    double ll = 0;
    for (int i = 0; i < n; ++i) {
      double l0 = std::log(fit.pi0) + normal_logpdf(x[i], fit.mean0, fit.var0);
      double l1 = std::log(1.0 - fit.pi0) + normal_logpdf(x[i], fit.mean1, fit.var1);
      double m = std::max(l0, l1);
      double denom = std::exp(l0 - m) + std::exp(l1 - m);
      resp[i] = std::exp(l1 - m) / denom;
      ll += m + std::log(denom);
    }
    double s1 = 0, sx0 = 0, sx1 = 0;
    for (int i = 0; i < n; ++i) {
      s1 += resp[i];
      sx0 += (1 - resp[i]) * x[i];
      sx1 += resp[i] * x[i];
    }
    double s0 = n - s1;
    fit.pi0 = std::clamp(s0 / n, 1e-6, 1.0 - 1e-6);
    fit.mean0 = s0 > 0 ? sx0 / s0 : fit.mean0;
    fit.mean1 = s1 > 0 ? sx1 / s1 : fit.mean1;
    double v0 = 0, v1 = 0;
    for (int i = 0; i < n; ++i) {
      v0 += (1 - resp[i]) * (x[i] - fit.mean0) * (x[i] - fit.mean0);
      v1 += resp[i] * (x[i] - fit.mean1) * (x[i] - fit.mean1);
    }
    fit.var0 = std::max(s0 > 0 ? v0 / s0 : fit.var0, 1e-8);
    fit.var1 = std::max(s1 > 0 ? v1 / s1 : fit.var1, 1e-8);
    if (std::abs(ll - prev_ll) < tol * (1.0 + std::abs(ll))) {
      fit.converged = true;
      break;
    }
    prev_ll = ll;
  }
  // keep component 0 as the lower-mean (null) component
  if (fit.mean0 > fit.mean1) {
    std::swap(fit.mean0, fit.mean1);
    std::swap(fit.var0, fit.var1);
    fit.pi0 = 1.0 - fit.pi0;
  }
  return fit;
}

LocfdrResult locfdr_baseline(const ProblemInput& input, LocfdrWeights weights,
                             const std::vector<std::vector<Candidate>>* match_prob,
                             double pi0_init, double alpha) {
  const int p = input.n_features();
  const int k = input.n_metabolites();
  if (weights == LocfdrWeights::Posterior && match_prob == nullptr)
    throw std::domain_error("locfdr_baseline: posterior weights require match_prob");

  std::vector<double> num(k, 0.0), den(k, 0.0);
  for (int i = 0; i < p; ++i) {
    const auto& row =
        weights == LocfdrWeights::Posterior ? (*match_prob)[i] : input.candidates[i];
    double equal_w = 1.0 / input.candidates[i].size();
    for (const auto& c : row) {
      double w = weights == LocfdrWeights::Posterior ? c.q : equal_w;
      num[c.metabolite] += w * input.feature_stats[i];
      den[c.metabolite] += w;
    }
  }

  LocfdrResult res;
  res.evaluated.assign(k, 0);
  res.statistic.assign(k, 0.0);
  res.lfdr.assign(k, 1.0);
  res.selected.assign(k, 0);
  std::vector<double> t;
  std::vector<int> t_idx;
  for (int j = 0; j < k; ++j) {
    if (den[j] <= 0) continue;
    res.evaluated[j] = 1;
    res.statistic[j] = num[j] / den[j];
    t.push_back(res.statistic[j]);
    t_idx.push_back(j);
  }
  if (t.size() < 2) return res;

  auto fit = fit_two_gaussian_em(t, pi0_init);
  res.em_converged = fit.converged;
  for (size_t idx = 0; idx < t.size(); ++idx) {
    double l0 = std::log(fit.pi0) + normal_logpdf(t[idx], fit.mean0, fit.var0);
    double l1 = std::log(1.0 - fit.pi0) + normal_logpdf(t[idx], fit.mean1, fit.var1);
    double m = std::max(l0, l1);
    double f = std::exp(l0 - m) + std::exp(l1 - m);
    res.lfdr[t_idx[idx]] = std::exp(l0 - m) / f;
  }

  // largest ascending-lfdr prefix with mean lfdr <= alpha
  std::vector<int> order(t_idx);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return res.lfdr[a] < res.lfdr[b]; });
  double acc = 0;
  int cut = 0;
  for (size_t l = 0; l < order.size(); ++l) {
    acc += res.lfdr[order[l]];
    if (acc / (l + 1) <= alpha) cut = static_cast<int>(l + 1);
  }
  for (int l = 0; l < cut; ++l) res.selected[order[l]] = 1;
  return res;
}

std::vector<char> matched_scope(const ProblemInput& input) {
  std::vector<char> scope(input.n_metabolites(), 0);
  for (const auto& row : input.candidates)
    for (const auto& c : row) scope[c.metabolite] = 1;
  return scope;
}

namespace {

MetricReport confusion_report(const std::vector<int>& predicted,
                              const std::vector<int>& actual,
                              const std::vector<double>& scores,
                              const std::vector<int>& labels) {
  MetricReport rep;
  int tp = 0, tn = 0, fp = 0, fn = 0;
  for (size_t i = 0; i < predicted.size(); ++i) {
    if (predicted[i] && actual[i]) ++tp;
    else if (predicted[i] && !actual[i]) ++fp;
    else if (!predicted[i] && actual[i]) ++fn;
    else ++tn;
  }
  rep.n_eval = static_cast<int>(predicted.size());
  rep.acc = rep.n_eval ? static_cast<double>(tp + tn) / rep.n_eval : 0.0;
  rep.fpr = (fp + tn) ? static_cast<double>(fp) / (fp + tn) : 0.0;
  rep.tpr = (tp + fn) ? static_cast<double>(tp) / (tp + fn) : 0.0;
  rep.auc = rank_auc(scores, labels);
  return rep;
}

}  // namespace

MetricReport evaluate_selection(const std::vector<char>& selected,
                                const std::vector<double>& scores,
                                const ScenarioTruth& truth,
                                const std::vector<char>& scope) {
  std::vector<int> pred, act;
  std::vector<double> sc;
  for (size_t j = 0; j < scope.size(); ++j) {
    if (!scope[j]) continue;
    pred.push_back(selected[j]);
    act.push_back(truth.true_z[j]);
    sc.push_back(scores[j]);
  }
  return confusion_report(pred, act, sc, act);
}

MetricReport evaluate_matching(const std::vector<int>& match_assignment,
                               const std::vector<std::vector<Candidate>>& match_prob,
                               const std::vector<double>& inclusion_prob,
                               const ScenarioTruth& truth) {
  std::vector<int> pred, act;
  std::vector<double> sc;
  std::vector<int> lab;
  for (size_t i = 0; i < match_assignment.size(); ++i) {
    if (match_prob[i].size() < 2) continue;  // single-candidate: trivially correct
    int assigned_class = truth.true_z[match_assignment[i]];
    int true_class = truth.true_z[truth.true_match[i]];
    pred.push_back(assigned_class);
    act.push_back(true_class);
    // probability the feature sits on an alternative metabolite
    double score = 0;
    for (const auto& c : match_prob[i]) score += c.q * inclusion_prob[c.metabolite];
    sc.push_back(score);
    lab.push_back(true_class);
  }
  MetricReport rep = confusion_report(pred, act, sc, lab);
  // acc here means class-correct matching
  int correct = 0;
  for (size_t i = 0; i < pred.size(); ++i) correct += pred[i] == act[i];
  rep.acc = pred.empty() ? 1.0 : static_cast<double>(correct) / pred.size();
  return rep;
}

}  // namespace baum
