#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "bga/errors.hpp"
#include "bga/graph.hpp"

#include "oracles.hpp"

using bga::Graph;

namespace {

std::set<std::pair<int, int>> edge_set(const Graph& g) {
  std::set<std::pair<int, int>> s;
  for (int v = 0; v < g.n; ++v)
    for (int u : g.out_adj[v]) s.insert({v, u});
  return s;
}

}  // namespace

TEST_CASE("complete graphs") {
  const Graph g3 = bga::complete(3);
  CHECK(g3.edge_count() == 6);
  for (int v = 0; v < 3; ++v) CHECK(g3.out_deg(v) == 2);

  const Graph g2 = bga::complete(2);
  CHECK(edge_set(g2) == std::set<std::pair<int, int>>{{0, 1}, {1, 0}});

  CHECK(bga::degree_stats(bga::complete(16)).deg_max == 15);
  CHECK_THROWS_AS(bga::complete(1), bga::InvalidParameter);
}

TEST_CASE("ring graphs") {
  const Graph g4 = bga::ring(4);
  for (int i = 0; i < 4; ++i) {
    const std::set<int> expect{(i + 1) % 4, (i + 3) % 4};
    CHECK(std::set<int>(g4.out_adj[i].begin(), g4.out_adj[i].end()) == expect);
  }
  CHECK(bga::ring(5).edge_count() == 10);
  CHECK(bga::degree_stats(bga::ring(8)).deg_max == 2);
  CHECK_THROWS_AS(bga::ring(2), bga::InvalidParameter);
}

TEST_CASE("torus lattices") {
  const Graph t = bga::torus_lattice(2, 3);
  CHECK(t.n == 9);
  for (int v = 0; v < t.n; ++v) CHECK(t.out_deg(v) == 4);

  for (int n : {3, 5, 8})
    CHECK(edge_set(bga::torus_lattice(1, n)) == edge_set(bga::ring(n)));

  const Graph t3 = bga::torus_lattice(3, 4);
  CHECK(t3.n == 64);
  CHECK(t3.edge_count() == 384);  // n * 2k by enumeration

  CHECK_THROWS_AS(bga::torus_lattice(0, 3), bga::InvalidParameter);
  CHECK_THROWS_AS(bga::torus_lattice(1, 2), bga::InvalidParameter);
}

TEST_CASE("hypercube graphs") {
  const Graph h1 = bga::hypercube(1);
  CHECK(h1.n == 2);
  CHECK(edge_set(h1) == std::set<std::pair<int, int>>{{0, 1}, {1, 0}});

  for (int v = 0; v < 8; ++v) CHECK(bga::hypercube(3).out_deg(v) == 3);

  const Graph h4 = bga::hypercube(4);
  CHECK(h4.n == 16);
  CHECK(h4.edge_count() == 64);

  // vertex-transitive: regular of degree d
  for (int d = 1; d <= 8; ++d) {
    const Graph h = bga::hypercube(d);
    for (int v = 0; v < h.n; ++v) {
      REQUIRE(h.out_deg(v) == d);
      REQUIRE(h.in_deg(v) == d);
    }
  }
  CHECK_THROWS_AS(bga::hypercube(0), bga::InvalidParameter);
}

TEST_CASE("de Bruijn graphs") {
  const Graph g = bga::de_bruijn(2, 3);
  CHECK(g.n == 8);
  CHECK(g.out_adj[3] == std::vector<int>{6, 7});
  CHECK(g.out_adj[0] == std::vector<int>{1});  // loop 0->0 removed
  CHECK(bga::is_balanced(g));
  CHECK_FALSE(bga::is_symmetric(g));

  const Graph g22 = bga::de_bruijn(2, 2);
  CHECK(edge_set(g22) == std::set<std::pair<int, int>>{
                             {0, 1}, {1, 2}, {1, 3}, {2, 0}, {2, 1}, {3, 2}});

  CHECK(bga::is_balanced(bga::de_bruijn(3, 2)));

  CHECK_THROWS_AS(bga::de_bruijn(1, 2), bga::InvalidParameter);
  CHECK_THROWS_AS(bga::de_bruijn(2, 1), bga::InvalidParameter);
}

TEST_CASE("geometric graphs") {
  CHECK(bga::rgg_radius(2) == doctest::Approx(0.6475755123835111).epsilon(1e-12));

  Eigen::MatrixX2d far(2, 2);
  far << 0.0, 0.0, 1.0, 1.0;
  CHECK(bga::geometric_graph(far, bga::rgg_radius(2)).edge_count() == 0);

  Eigen::MatrixX2d dup(3, 2);
  dup << 0.25, 0.5, 0.25, 0.5, 0.9, 0.9;
  const Graph d = bga::geometric_graph(dup, bga::rgg_radius(3));
  CHECK(edge_set(d).count({0, 1}) == 1);  // distance 0 < r
  CHECK(edge_set(d).count({1, 0}) == 1);

  // same seed, same graph
  const Graph a = bga::random_geometric(40, std::uint64_t{7});
  const Graph b = bga::random_geometric(40, std::uint64_t{7});
  CHECK(a.out_adj == b.out_adj);
  CHECK(bga::is_symmetric(a));
  CHECK(bga::is_balanced(a));
}

TEST_CASE("geometric max degree calibration") {
  // mean over 100 seeds of the per-sample max degree at n = 100 stays
  // below 6*ln(100); recorded by a pre-build Monte Carlo run
  double total = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Graph g = bga::random_geometric(100, seed);
    total += bga::degree_stats(g).deg_max;
  }
  CHECK(total / 100.0 <= 6.0 * std::log(100.0));
}

TEST_CASE("predicates") {
  CHECK(bga::is_balanced(bga::complete(5)));
  CHECK(bga::is_symmetric(bga::complete(5)));

  const Graph path = bga::graph_from_edges(3, {{0, 1}, {1, 2}});
  CHECK_FALSE(bga::is_balanced(path));
  CHECK_FALSE(bga::is_connected(path));

  CHECK(bga::is_connected(bga::ring(6)));
  CHECK(bga::is_connected(bga::de_bruijn(2, 3)));

  const Graph two_triangles = bga::graph_from_edges(
      6, {{0, 1}, {1, 0}, {1, 2}, {2, 1}, {0, 2}, {2, 0},
          {3, 4}, {4, 3}, {4, 5}, {5, 4}, {3, 5}, {5, 3}});
  CHECK_FALSE(bga::is_connected(two_triangles));
  CHECK(bga::is_balanced(two_triangles));
}

TEST_CASE("generator invariants and determinism") {
  for (const Graph& g : oracles::balanced_pool()) {
    CHECK_NOTHROW(bga::validate(g));  // includes transpose consistency
    const bga::DegreeStats deg = bga::degree_stats(g);
    CHECK(deg.deg_max >= deg.deg_plus_max);
    CHECK(deg.out_deg.maxCoeff() <= g.n - 1);
  }
  CHECK(bga::ring(12).out_adj == bga::ring(12).out_adj);
  CHECK(bga::de_bruijn(2, 4).out_adj == bga::de_bruijn(2, 4).out_adj);
}

TEST_CASE("json round trip") {
  const Graph g = bga::ring(8);
  const nlohmann::json doc = bga::to_json(g);
  const Graph back = bga::graph_from_json(doc);
  CHECK(back.n == g.n);
  CHECK(back.out_adj == g.out_adj);
  CHECK(back.in_adj == g.in_adj);
  CHECK(back.family == "ring");
  CHECK(back.params.at("n") == 8);

  // lexicographic edge order
  const auto& edges = doc.at("edges");
  for (std::size_t i = 1; i < edges.size(); ++i) {
    const auto a = std::pair{edges[i - 1][0].get<int>(), edges[i - 1][1].get<int>()};
    const auto b = std::pair{edges[i][0].get<int>(), edges[i][1].get<int>()};
    CHECK(a < b);
  }
}

TEST_CASE("json loading rejects invalid documents") {
  using nlohmann::json;
  CHECK_THROWS_AS(bga::graph_from_json(json{{"edges", json::array()}}),
                  bga::InvalidParameter);  // missing n
  CHECK_THROWS_AS(
      bga::graph_from_json(json{{"n", 3}, {"edges", {{0, 0}}}}),
      bga::InvalidParameter);  // self-loop
  CHECK_THROWS_AS(
      bga::graph_from_json(json{{"n", 3}, {"edges", {{0, 1}, {0, 1}}}}),
      bga::InvalidParameter);  // duplicate
  CHECK_THROWS_AS(
      bga::graph_from_json(json{{"n", 3}, {"edges", {{0, 5}}}}),
      bga::InvalidParameter);  // out of range
}

TEST_CASE("graph_from_edges validation") {
  CHECK_THROWS_AS(bga::graph_from_edges(2, {{0, 0}}), bga::InvalidParameter);
  CHECK_THROWS_AS(bga::graph_from_edges(2, {{0, 1}, {0, 1}}),
                  bga::InvalidParameter);
  CHECK_THROWS_AS(bga::graph_from_edges(2, {{0, 2}}), bga::InvalidParameter);
  CHECK_THROWS_AS(bga::graph_from_edges(0, {}), bga::InvalidParameter);
}
