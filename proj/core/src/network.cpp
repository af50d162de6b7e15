#include "baum/network.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "baum/model.hpp"

namespace baum {

Network::Network(int k, const std::vector<std::pair<int, int>>& edges) : adj_(k) {
  std::set<std::pair<int, int>> seen;
  for (auto [j, l] : edges) {
    if (j == l) throw std::domain_error("Network: self-loop");
    if (j < 0 || l < 0 || j >= k || l >= k)
      throw std::domain_error("Network: node index out of range");
    auto e = std::minmax(j, l);
    if (seen.insert({e.first, e.second}).second) add_edge(e.first, e.second);
  }
}

void Network::add_edge(int j, int l) {
  if (j == l) throw std::domain_error("Network: self-loop");
  if (j > l) std::swap(j, l);
  edges_.push_back({j, l});
  adj_[j].push_back(l);
  adj_[l].push_back(j);
}

bool Network::has_edge(int j, int l) const {
  const auto& a = adj_[j].size() <= adj_[l].size() ? adj_[j] : adj_[l];
  int target = adj_[j].size() <= adj_[l].size() ? l : j;
  return std::find(a.begin(), a.end(), target) != a.end();
}

Network generate_barabasi_albert(int k, int m_attach, std::uint64_t rng_seed) {
  if (m_attach < 1 || k <= m_attach)
    throw std::domain_error("generate_barabasi_albert: requires k > m_attach >= 1");
  Rng rng(rng_seed);
  Network net(k);
  // Seed: clique on m_attach + 1 nodes.
  int seed_n = m_attach + 1;
  std::vector<int> endpoint_pool;  // node repeated once per incident edge
  for (int j = 0; j < seed_n; ++j)
    for (int l = j + 1; l < seed_n; ++l) {
      net.add_edge(j, l);
      endpoint_pool.push_back(j);
      endpoint_pool.push_back(l);
    }
  for (int v = seed_n; v < k; ++v) {
    std::set<int> targets;
    while (static_cast<int>(targets.size()) < m_attach) {
      std::uniform_int_distribution<size_t> pick(0, endpoint_pool.size() - 1);
      targets.insert(endpoint_pool[pick(rng)]);
    }
    for (int t : targets) {
      net.add_edge(v, t);
      endpoint_pool.push_back(v);
      endpoint_pool.push_back(t);
    }
  }
  return net;
}

namespace {

struct DisjointSet {
  std::vector<int> parent, rank_;
  explicit DisjointSet(int n) : parent(n), rank_(n, 0) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void merge(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
  }
};

}  // namespace

BondPartition swendsen_wang_bonds(const Network& network, const std::vector<int>& z,
                                  const Hyperparameters& hp, Rng& rng) {
  const int k = network.node_count();
  if (static_cast<int>(z.size()) != k)
    throw std::domain_error("swendsen_wang_bonds: z length mismatch");
  if (hp.rho0 != hp.rho1)
    throw std::domain_error(
        "swendsen_wang_bonds: rho0 != rho1 is unsupported (label-dependent bond rates)");
  const double rho = hp.rho0;
  DisjointSet ds(k);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (auto [j, l] : network.edges()) {
    if (z[j] != z[l]) continue;
    double rate = rho * (hp.node_weight(j) + hp.node_weight(l));
    double p_bond = 1.0 - std::exp(-rate);
    if (unif(rng) < p_bond) ds.merge(j, l);
  }
  BondPartition part;
  part.cluster_id.assign(k, -1);
  for (int j = 0; j < k; ++j) {
    int r = ds.find(j);
    if (part.cluster_id[r] < 0) part.cluster_id[r] = part.n_clusters++;
    part.cluster_id[j] = part.cluster_id[r];
  }
  return part;
}

std::vector<std::vector<int>> connected_components(const Network& network,
                                                   const std::vector<int>& node_subset) {
  std::vector<char> in_subset(network.node_count(), 0);
  for (int j : node_subset) in_subset[j] = 1;
  DisjointSet ds(network.node_count());
  for (auto [j, l] : network.edges())
    if (in_subset[j] && in_subset[l]) ds.merge(j, l);
  std::vector<int> sorted(node_subset);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<std::vector<int>> comps;
  std::vector<int> comp_of(network.node_count(), -1);
  for (int j : sorted) {
    int r = ds.find(j);
    if (comp_of[r] < 0) {
      comp_of[r] = static_cast<int>(comps.size());
      comps.emplace_back();
    }
    comps[comp_of[r]].push_back(j);
  }
  return comps;
}

}  // namespace baum
