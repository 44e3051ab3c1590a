#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "json.hpp"

namespace bga {

/// Largest node count any generator will produce.
inline constexpr long long kMaxNodes = 1 << 22;

/// Directed graph stored as paired adjacency lists. Neighbor lists are
/// sorted ascending, contain no self-loops and no duplicates, and in_adj
/// is always the exact transpose of out_adj.
struct Graph {
  int n = 0;
  std::vector<std::vector<int>> out_adj;
  std::vector<std::vector<int>> in_adj;
  std::string family = "custom";
  nlohmann::json params = nlohmann::json::object();

  int out_deg(int v) const { return static_cast<int>(out_adj[v].size()); }
  int in_deg(int v) const { return static_cast<int>(in_adj[v].size()); }
  std::size_t edge_count() const;
};

struct DegreeStats {
  Eigen::VectorXi out_deg;
  Eigen::VectorXi in_deg;
  int deg_plus_max = 0;
  int deg_minus_max = 0;
  int deg_max = 0;
};

DegreeStats degree_stats(const Graph& g);

/// Builds a graph from an explicit directed edge list.
/// Throws InvalidParameter on self-loops, duplicates or bad endpoints.
Graph graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges,
                       std::string family = "custom",
                       nlohmann::json params = nlohmann::json::object());

// --- Generators ------------------------------------------------------------

/// Every ordered pair (u,v), u != v. Requires n >= 2.
Graph complete(int n);

/// Bidirectional cycle, node i adjacent to (i±1) mod n. Requires n >= 3.
Graph ring(int n);

/// k-dimensional torus with side^k nodes; each node bidirectionally adjacent
/// to its 2k axis neighbors with wrap-around. Requires k >= 1, side >= 3.
Graph torus_lattice(int k, int side);

/// 2^dim nodes; u,v adjacent iff their indices differ in exactly one bit.
/// Requires dim >= 1.
Graph hypercube(int dim);

/// De Bruijn graph on `symbols` symbols of dimension `dim`: directed edges
/// i -> (symbols*i + j) mod symbols^dim for j in [0, symbols), self-loops
/// removed. Balanced but not symmetric. Requires symbols >= 2, dim >= 2.
Graph de_bruijn(int symbols, int dim);

/// Connectivity radius 1.1*sqrt(log(n)/n) used by random_geometric.
double rgg_radius(int n);

/// Geometric graph on given points in the unit square: undirected edge
/// wherever the Euclidean distance is strictly below `radius`.
Graph geometric_graph(const Eigen::MatrixX2d& points, double radius);

/// Samples n points uniformly on the unit square and connects pairs closer
/// than rgg_radius(n). Connectivity is not guaranteed; callers check
/// is_connected and discard or resample.
Graph random_geometric(int n, std::mt19937_64& rng);
Graph random_geometric(int n, std::uint64_t seed);

// --- Predicates ------------------------------------------------------------

/// in_deg(v) == out_deg(v) for every node.
bool is_balanced(const Graph& g);

/// Out-neighborhood equals in-neighborhood at every node.
bool is_symmetric(const Graph& g);

/// Strong connectivity.
bool is_connected(const Graph& g);

/// Checks the structural invariants (index range, sorted unique neighbor
/// lists, no self-loops, transpose consistency). Throws InvalidParameter.
void validate(const Graph& g);

// --- Serialization ----------------------------------------------------------

/// {"n": int, "edges": [[u,v],...], "family": string, "params": object},
/// edges sorted lexicographically.
nlohmann::json to_json(const Graph& g);

/// Inverse of to_json; the loaded graph must pass validate() or this throws.
Graph graph_from_json(const nlohmann::json& doc);

}  // namespace bga
