#include "bga/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "bga/errors.hpp"
#include "bga/rng.hpp"

namespace bga {

namespace {

std::vector<std::vector<int>> transpose(int n,
                                        const std::vector<std::vector<int>>& out) {
  std::vector<std::vector<int>> in(n);
  for (int v = 0; v < n; ++v)
    for (int u : out[v]) in[u].push_back(v);
  for (auto& lst : in) std::sort(lst.begin(), lst.end());
  return in;
}

Graph finish(int n, std::vector<std::vector<int>> out, std::string family,
             nlohmann::json params) {
  for (auto& lst : out) std::sort(lst.begin(), lst.end());
  Graph g;
  g.n = n;
  g.out_adj = std::move(out);
  g.in_adj = transpose(n, g.out_adj);
  g.family = std::move(family);
  g.params = std::move(params);
  validate(g);
  return g;
}

long long checked_pow(long long base, int exp, const char* what) {
  long long r = 1;
  for (int i = 0; i < exp; ++i) {
    r *= base;
    if (r > kMaxNodes)
      throw InvalidParameter(std::string(what) + ": node count exceeds limit");
  }
  return r;
}

int reachable_count(int n, const std::vector<std::vector<int>>& adj) {
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u : adj[v])
      if (!seen[u]) {
        seen[u] = 1;
        ++count;
        stack.push_back(u);
      }
  }
  return count;
}

}  // namespace

std::size_t Graph::edge_count() const {
  std::size_t m = 0;
  for (const auto& lst : out_adj) m += lst.size();
  return m;
}

DegreeStats degree_stats(const Graph& g) {
  DegreeStats s;
  s.out_deg.resize(g.n);
  s.in_deg.resize(g.n);
  for (int v = 0; v < g.n; ++v) {
    s.out_deg(v) = g.out_deg(v);
    s.in_deg(v) = g.in_deg(v);
  }
  s.deg_plus_max = g.n > 0 ? s.out_deg.maxCoeff() : 0;
  s.deg_minus_max = g.n > 0 ? s.in_deg.maxCoeff() : 0;
  s.deg_max = std::max(s.deg_plus_max, s.deg_minus_max);
  return s;
}

Graph graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges,
                       std::string family, nlohmann::json params) {
  if (n < 1) throw InvalidParameter("graph_from_edges: n must be >= 1");
  std::vector<std::vector<int>> out(n);
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw InvalidParameter("graph_from_edges: endpoint out of range");
    if (u == v) throw InvalidParameter("graph_from_edges: self-loop");
    out[u].push_back(v);
  }
  return finish(n, std::move(out), std::move(family), std::move(params));
}

Graph complete(int n) {
  if (n < 2) throw InvalidParameter("complete: n must be >= 2");
  std::vector<std::vector<int>> out(n);
  for (int v = 0; v < n; ++v) {
    out[v].reserve(n - 1);
    for (int u = 0; u < n; ++u)
      if (u != v) out[v].push_back(u);
  }
  return finish(n, std::move(out), "complete", {{"n", n}});
}

Graph ring(int n) {
  if (n < 3) throw InvalidParameter("ring: n must be >= 3");
  std::vector<std::vector<int>> out(n);
  for (int v = 0; v < n; ++v)
    out[v] = {(v + 1) % n, (v + n - 1) % n};
  return finish(n, std::move(out), "ring", {{"n", n}});
}

Graph torus_lattice(int k, int side) {
  if (k < 1) throw InvalidParameter("torus_lattice: dimension must be >= 1");
  if (side < 3) throw InvalidParameter("torus_lattice: side must be >= 3");
  const int n = static_cast<int>(checked_pow(side, k, "torus_lattice"));
  std::vector<std::vector<int>> out(n);
  for (int v = 0; v < n; ++v) {
    out[v].reserve(2 * k);
    int stride = 1;
    for (int axis = 0; axis < k; ++axis) {
      const int coord = (v / stride) % side;
      const int base = v - coord * stride;
      out[v].push_back(base + ((coord + 1) % side) * stride);
      out[v].push_back(base + ((coord + side - 1) % side) * stride);
      stride *= side;
    }
  }
  return finish(n, std::move(out), "torus", {{"dim", k}, {"side", side}});
}

Graph hypercube(int dim) {
  if (dim < 1) throw InvalidParameter("hypercube: dim must be >= 1");
  const int n = static_cast<int>(checked_pow(2, dim, "hypercube"));
  std::vector<std::vector<int>> out(n);
  for (int v = 0; v < n; ++v) {
    out[v].reserve(dim);
    for (int b = 0; b < dim; ++b) out[v].push_back(v ^ (1 << b));
  }
  return finish(n, std::move(out), "hypercube", {{"dim", dim}});
}

Graph de_bruijn(int symbols, int dim) {
  if (symbols < 2) throw InvalidParameter("de_bruijn: symbols must be >= 2");
  if (dim < 2) throw InvalidParameter("de_bruijn: dim must be >= 2");
  const long long n = checked_pow(symbols, dim, "de_bruijn");
  std::vector<std::vector<int>> out(n);
  for (long long v = 0; v < n; ++v) {
    for (int j = 0; j < symbols; ++j) {
      const long long u = (static_cast<long long>(symbols) * v + j) % n;
      if (u != v) out[v].push_back(static_cast<int>(u));
    }
  }
  return finish(static_cast<int>(n), std::move(out), "debruijn",
                {{"symbols", symbols}, {"dim", dim}});
}

double rgg_radius(int n) {
  if (n < 2) throw InvalidParameter("rgg_radius: n must be >= 2");
  return 1.1 * std::sqrt(std::log(static_cast<double>(n)) / n);
}

Graph geometric_graph(const Eigen::MatrixX2d& points, double radius) {
  const int n = static_cast<int>(points.rows());
  if (n < 1) throw InvalidParameter("geometric_graph: need at least one point");
  if (radius <= 0) throw InvalidParameter("geometric_graph: radius must be > 0");
  const double r2 = radius * radius;
  std::vector<std::vector<int>> out(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      // strict inequality: ties at exactly r carry no edge
      if ((points.row(i) - points.row(j)).squaredNorm() < r2) {
        out[i].push_back(j);
        out[j].push_back(i);
      }
    }
  return finish(n, std::move(out), "rgg", {{"n", n}, {"radius", radius}});
}

Graph random_geometric(int n, std::mt19937_64& rng) {
  if (n < 2) throw InvalidParameter("random_geometric: n must be >= 2");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::MatrixX2d pts(n, 2);
  for (int i = 0; i < n; ++i) {
    pts(i, 0) = unit(rng);
    pts(i, 1) = unit(rng);
  }
  return geometric_graph(pts, rgg_radius(n));
}

Graph random_geometric(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Graph g = random_geometric(n, rng);
  g.params["seed"] = seed;
  return g;
}

bool is_balanced(const Graph& g) {
  for (int v = 0; v < g.n; ++v)
    if (g.in_deg(v) != g.out_deg(v)) return false;
  return true;
}

bool is_symmetric(const Graph& g) {
  for (int v = 0; v < g.n; ++v)
    if (g.out_adj[v] != g.in_adj[v]) return false;
  return true;
}

bool is_connected(const Graph& g) {
  if (g.n == 0) return false;
  return reachable_count(g.n, g.out_adj) == g.n &&
         reachable_count(g.n, g.in_adj) == g.n;
}

void validate(const Graph& g) {
  if (g.n < 1) throw InvalidParameter("graph: n must be >= 1");
  if (static_cast<int>(g.out_adj.size()) != g.n ||
      static_cast<int>(g.in_adj.size()) != g.n)
    throw InvalidParameter("graph: adjacency size mismatch");
  for (int v = 0; v < g.n; ++v) {
    const auto& lst = g.out_adj[v];
    for (std::size_t i = 0; i < lst.size(); ++i) {
      if (lst[i] < 0 || lst[i] >= g.n)
        throw InvalidParameter("graph: neighbor index out of range");
      if (lst[i] == v) throw InvalidParameter("graph: self-loop");
      if (i > 0 && lst[i] <= lst[i - 1])
        throw InvalidParameter("graph: neighbor list not sorted unique");
    }
  }
  if (g.in_adj != transpose(g.n, g.out_adj))
    throw InvalidParameter("graph: in_adj is not the transpose of out_adj");
}

nlohmann::json to_json(const Graph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (int v = 0; v < g.n; ++v)
    for (int u : g.out_adj[v]) edges.push_back({v, u});
  return {{"n", g.n}, {"edges", std::move(edges)},
          {"family", g.family}, {"params", g.params}};
}

Graph graph_from_json(const nlohmann::json& doc) {
  try {
    const int n = doc.at("n").get<int>();
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : doc.at("edges")) {
      if (!e.is_array() || e.size() != 2)
        throw InvalidParameter("graph json: malformed edge");
      edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    std::string family = doc.value("family", "custom");
    nlohmann::json params = doc.value("params", nlohmann::json::object());
    return graph_from_edges(n, edges, std::move(family), std::move(params));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParameter(std::string("graph json: ") + e.what());
  }
}

}  // namespace bga
