#include "baum/enrichment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "baum/stats.hpp"

namespace baum {

namespace {

double log_choose(int n, int r) {
  return std::lgamma(n + 1.0) - std::lgamma(r + 1.0) - std::lgamma(n - r + 1.0);
}

}  // namespace

double hypergeometric_test(int x, int n, int K, int N) {
  if (x < 0 || n < 0 || K < 0 || N < 0 || n > N || K > N || x > std::min(n, K))
    throw std::domain_error("hypergeometric_test: inconsistent counts");
  if (x == 0) return 1.0;
  const double denom = log_choose(N, n);
  std::vector<double> terms;
  const int lo = std::max(x, std::max(0, n - (N - K)));
  const int hi = std::min(n, K);
  for (int t = lo; t <= hi; ++t)
    terms.push_back(log_choose(K, t) + log_choose(N - K, n - t) - denom);
  double lp = log_sum_exp(terms);
  return std::min(1.0, std::exp(lp));
}

SubnetworkReport extract_subnetworks(const Network& network,
                                     const std::vector<char>& selected,
                                     const std::vector<int>& match_assignment) {
  const int k = network.node_count();
  std::vector<char> connector(k, 0);
  for (int j = 0; j < k; ++j) {
    if (selected[j]) continue;
    int n_sel = 0;
    for (int l : network.neighbors(j)) n_sel += selected[l] ? 1 : 0;
    if (n_sel >= 2) connector[j] = 1;
  }
  std::vector<int> subset;
  for (int j = 0; j < k; ++j)
    if (selected[j] || connector[j]) subset.push_back(j);

  auto comps = connected_components(network, subset);
  SubnetworkReport report;
  for (auto& comp : comps) {
    SubnetworkComponent sc;
    bool any_selected = false;
    for (int j : comp) {
      if (selected[j]) {
        sc.selected.push_back(j);
        any_selected = true;
      } else {
        sc.connectors.push_back(j);
      }
    }
    if (!any_selected) continue;  // connector-only fragments carry no signal
    for (size_t i = 0; i < match_assignment.size(); ++i) {
      int j = match_assignment[i];
      if (j >= 0 && std::binary_search(comp.begin(), comp.end(), j) && selected[j])
        sc.features.push_back({static_cast<int>(i), j});
    }
    report.components.push_back(std::move(sc));
  }
  return report;
}

std::vector<PathwayHit> rank_pathways(const PathwayDB& db, const std::vector<char>& selected,
                                      int universe_size, int min_overlap, double max_p) {
  int n_selected = 0;
  for (char s : selected) n_selected += s ? 1 : 0;
  std::vector<PathwayHit> hits;
  for (const auto& [name, members] : db.pathways) {
    int K = 0, x = 0;
    for (int j : members) {
      if (j < 0 || j >= universe_size) continue;  // outside the analysis universe
      ++K;
      if (selected[j]) ++x;
    }
    if (K == 0) continue;
    PathwayHit hit;
    hit.name = name;
    hit.overlap = x;
    hit.size = K;
    hit.p_value = hypergeometric_test(x, n_selected, K, universe_size);
    if (hit.overlap >= min_overlap && hit.p_value <= max_p) hits.push_back(std::move(hit));
  }
  std::sort(hits.begin(), hits.end(), [](const PathwayHit& a, const PathwayHit& b) {
    return a.p_value != b.p_value ? a.p_value < b.p_value : a.name < b.name;
  });
  return hits;
}

}  // namespace baum
