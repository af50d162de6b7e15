#ifndef BAUM_NETWORK_HPP
#define BAUM_NETWORK_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "baum/stats.hpp"

namespace baum {

// Undirected simple graph over k metabolites.
class Network {
 public:
  Network() = default;
  explicit Network(int k) : adj_(k) {}
  // Deduplicates, rejects self-loops.
  Network(int k, const std::vector<std::pair<int, int>>& edges);

  int node_count() const { return static_cast<int>(adj_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int j) const { return adj_[j]; }
  int degree(int j) const { return static_cast<int>(adj_[j].size()); }
  bool has_edge(int j, int l) const;

  void add_edge(int j, int l);

 private:
  std::vector<std::vector<int>> adj_;
  std::vector<std::pair<int, int>> edges_;  // stored with first < second
};

struct BondPartition {
  std::vector<int> cluster_id;  // contiguous 0..n_clusters-1
  int n_clusters = 0;
};

struct Hyperparameters;  // model.hpp

Network generate_barabasi_albert(int k, int m_attach, std::uint64_t rng_seed);

// Bonds activate on like-labeled edges with rate rho*(w_j + w_l); requires rho0 == rho1.
BondPartition swendsen_wang_bonds(const Network& network, const std::vector<int>& z,
                                  const Hyperparameters& hp, Rng& rng);

// Connected components of the subgraph induced by node_subset.
std::vector<std::vector<int>> connected_components(const Network& network,
                                                   const std::vector<int>& node_subset);

}  // namespace baum

#endif
