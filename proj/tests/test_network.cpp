#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>

#include "baum/model.hpp"
#include "baum/network.hpp"

using namespace baum;

TEST_CASE("barabasi-albert: m_attach=1 yields a tree") {
  auto net = generate_barabasi_albert(5, 1, 42);
  CHECK(net.edge_count() == 4);
  // connected: one component over all nodes
  std::vector<int> all = {0, 1, 2, 3, 4};
  CHECK(connected_components(net, all).size() == 1);
}

TEST_CASE("barabasi-albert: determinism and degree sum") {
  auto a = generate_barabasi_albert(200, 2, 7);
  auto b = generate_barabasi_albert(200, 2, 7);
  CHECK(a.edges() == b.edges());
  int deg_sum = 0;
  for (int j = 0; j < a.node_count(); ++j) deg_sum += a.degree(j);
  CHECK(deg_sum == 2 * a.edge_count());
}

TEST_CASE("barabasi-albert: heavy-tailed degrees across seeds") {
  int ok = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto net = generate_barabasi_albert(1000, 1, seed);
    int max_deg = 0;
    for (int j = 0; j < 1000; ++j) max_deg = std::max(max_deg, net.degree(j));
    if (max_deg > 10) ++ok;
  }
  CHECK(ok == 100);
}

TEST_CASE("barabasi-albert rejects k <= m_attach") {
  CHECK_THROWS_AS(generate_barabasi_albert(2, 2, 0), std::domain_error);
}

TEST_CASE("swendsen-wang: rho = 0 gives singleton clusters") {
  auto net = generate_barabasi_albert(50, 2, 1);
  Hyperparameters hp;
  hp.rho0 = hp.rho1 = 0;
  std::vector<int> z(50, 1);
  Rng rng(9);
  auto part = swendsen_wang_bonds(net, z, hp, rng);
  CHECK(part.n_clusters == 50);
}

TEST_CASE("swendsen-wang: huge rho bonds the whole like-labeled graph") {
  auto net = generate_barabasi_albert(50, 1, 2);
  Hyperparameters hp;
  hp.rho0 = hp.rho1 = 100.0;
  std::vector<int> z(50, 0);
  Rng rng(9);
  auto part = swendsen_wang_bonds(net, z, hp, rng);
  CHECK(part.n_clusters == 1);
}

TEST_CASE("swendsen-wang: single-edge bond frequency matches 1-exp(-0.2)") {
  Network net(2, {{0, 1}});
  Hyperparameters hp;
  hp.rho0 = hp.rho1 = 0.1;
  std::vector<int> z = {1, 1};
  Rng rng(31);
  int bonded = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    auto part = swendsen_wang_bonds(net, z, hp, rng);
    if (part.n_clusters == 1) ++bonded;
  }
  double freq = static_cast<double>(bonded) / n;
  CHECK(std::abs(freq - (1 - std::exp(-0.2))) < 0.01);
}

TEST_CASE("swendsen-wang: bonds never cross unlike labels") {
  auto net = generate_barabasi_albert(60, 2, 5);
  Hyperparameters hp;
  hp.rho0 = hp.rho1 = 2.0;
  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> z(60);
    for (auto& zj : z) zj = rng() % 2;
    auto part = swendsen_wang_bonds(net, z, hp, rng);
    for (int j = 0; j < 60; ++j)
      for (int l = 0; l < 60; ++l)
        if (part.cluster_id[j] == part.cluster_id[l]) CHECK(z[j] == z[l]);
  }
}

TEST_CASE("swendsen-wang refuses rho0 != rho1") {
  Network net(2, {{0, 1}});
  Hyperparameters hp;
  hp.rho0 = 0.1;
  hp.rho1 = 0.2;
  std::vector<int> z = {0, 0};
  Rng rng(1);
  CHECK_THROWS_AS(swendsen_wang_bonds(net, z, hp, rng), std::domain_error);
}

TEST_CASE("connected_components on induced subgraphs") {
  Network net(3, {{0, 1}, {1, 2}});  // path a-b-c
  CHECK(connected_components(net, {}).empty());
  auto two = connected_components(net, {0, 2});
  CHECK(two.size() == 2);
  auto one = connected_components(net, {0, 1, 2});
  CHECK(one.size() == 1);
  CHECK(one[0].size() == 3);
}

TEST_CASE("connected_components independent of subset ordering") {
  auto net = generate_barabasi_albert(40, 1, 3);
  std::vector<int> subset = {5, 1, 30, 2, 18, 9, 25};
  auto a = connected_components(net, subset);
  std::reverse(subset.begin(), subset.end());
  auto b = connected_components(net, subset);
  auto norm = [](std::vector<std::vector<int>> comps) {
    for (auto& c : comps) std::sort(c.begin(), c.end());
    std::sort(comps.begin(), comps.end());
    return comps;
  };
  CHECK(norm(a) == norm(b));
}
