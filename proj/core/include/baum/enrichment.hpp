#ifndef BAUM_ENRICHMENT_HPP
#define BAUM_ENRICHMENT_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "baum/network.hpp"

namespace baum {

struct PathwayDB {
  // pathway name -> member metabolite indices (deduplicated)
  std::map<std::string, std::set<int>> pathways;
};

struct SubnetworkComponent {
  std::vector<int> selected;    // green
  std::vector<int> connectors;  // gray
  std::vector<std::pair<int, int>> features;  // (feature, metabolite) blue attachments
};

struct SubnetworkReport {
  std::vector<SubnetworkComponent> components;
};

struct PathwayHit {
  std::string name;
  int overlap = 0, size = 0;
  double p_value = 1.0;
};

// Upper tail P(X >= x), X ~ Hypergeometric(N, K, n), evaluated in log space.
double hypergeometric_test(int x, int n, int K, int N);

// Induced graph on selected metabolites plus connectors: unselected metabolites
// adjacent to >= 2 selected ones (shortest paths of length <= 2).
SubnetworkReport extract_subnetworks(const Network& network,
                                     const std::vector<char>& selected,
                                     const std::vector<int>& match_assignment);

std::vector<PathwayHit> rank_pathways(const PathwayDB& db, const std::vector<char>& selected,
                                      int universe_size, int min_overlap = 3,
                                      double max_p = 0.05);

}  // namespace baum

#endif
