#include "baum/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace baum {

SelectionResult select_fdr(const std::vector<double>& u, double alpha) {
  if (!(alpha > 0 && alpha < 1)) throw std::domain_error("select_fdr: alpha out of (0,1)");
  SelectionResult res;
  res.alpha = alpha;
  const int k = static_cast<int>(u.size());
  res.selected.assign(k, 0);
  if (k == 0) return res;
  for (double uj : u)
    if (!(uj >= 0 && uj <= 1)) throw std::domain_error("select_fdr: u out of [0,1]");

  std::vector<double> sorted(u);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double acc = 0;
  int xi = 0;
  for (int l = 0; l < k; ++l) {
    acc += 1.0 - sorted[l];
    if (acc / (l + 1) <= alpha) xi = l + 1;
  }
  res.xi = xi;
  if (xi == 0) {
    res.threshold = 1.0;
    return res;
  }
  res.threshold = sorted[xi - 1];
  for (int j = 0; j < k; ++j) res.selected[j] = u[j] >= res.threshold ? 1 : 0;
  return res;
}

std::vector<int> assign_matches(const std::vector<std::vector<Candidate>>& match_prob) {
  std::vector<int> assignment(match_prob.size(), -1);
  for (size_t i = 0; i < match_prob.size(); ++i) {
    const auto& row = match_prob[i];
    if (row.empty()) throw std::domain_error("assign_matches: empty row");
    int best = row[0].metabolite;
    double best_q = row[0].q;
    for (const auto& c : row) {
      if (c.q > best_q || (c.q == best_q && c.metabolite < best)) {
        best = c.metabolite;
        best_q = c.q;
      }
    }
    assignment[i] = best;
  }
  return assignment;
}

AbundanceEstimate estimate_abundance(const std::vector<std::vector<Candidate>>& match_prob,
                                     const std::vector<std::vector<double>>& feature_matrix,
                                     int n_metabolites) {
  const int p = static_cast<int>(match_prob.size());
  const int n_subjects = static_cast<int>(feature_matrix.size());
  for (const auto& row : feature_matrix)
    if (static_cast<int>(row.size()) != p)
      throw std::domain_error("estimate_abundance: feature matrix width != feature count");

  // column mass per metabolite
  std::vector<double> col_mass(n_metabolites, 0.0);
  for (int i = 0; i < p; ++i)
    for (const auto& c : match_prob[i]) col_mass[c.metabolite] += c.q;

  AbundanceEstimate est;
  est.missing.resize(n_metabolites);
  est.weights.assign(n_metabolites, std::vector<double>(p, 0.0));
  for (int j = 0; j < n_metabolites; ++j) est.missing[j] = col_mass[j] <= 0 ? 1 : 0;
  for (int i = 0; i < p; ++i)
    for (const auto& c : match_prob[i])
      if (!est.missing[c.metabolite])
        est.weights[c.metabolite][i] = c.q / col_mass[c.metabolite];

  est.values.assign(n_subjects, std::vector<double>(n_metabolites, 0.0));
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (int s = 0; s < n_subjects; ++s)
    for (int j = 0; j < n_metabolites; ++j) {
      if (est.missing[j]) {
        est.values[s][j] = nan;
        continue;
      }
      double v = 0;
      for (int i = 0; i < p; ++i)
        if (est.weights[j][i] != 0) v += est.weights[j][i] * feature_matrix[s][i];
      est.values[s][j] = v;
    }
  return est;
}

}  // namespace baum
