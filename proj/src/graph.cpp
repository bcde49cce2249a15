#include "misgcn/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "misgcn/error.hpp"

namespace misgcn {

namespace {

void check_members(const Graph& g, std::span<const Vertex> s) {
  for (Vertex v : s) {
    if (v < 0 || v >= g.num_vertices()) {
      throw ContractViolation("vertex " + std::to_string(v) + " outside [0, " +
                              std::to_string(g.num_vertices()) + ")");
    }
  }
}

}  // namespace

Graph Graph::from_edges(std::span<const Edge> edges, Vertex n) {
  if (n < 0) throw ParseError("negative vertex count");
  std::vector<Edge> directed;
  directed.reserve(edges.size() * 2);
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n) {
      throw ParseError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                       ") has an endpoint outside [0, " + std::to_string(n) + ")");
    }
    if (u == v) continue;
    directed.emplace_back(u, v);
    directed.emplace_back(v, u);
  }
  std::sort(directed.begin(), directed.end());
  directed.erase(std::unique(directed.begin(), directed.end()), directed.end());

  Graph g;
  g.n_ = n;
  g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  g.adj_.reserve(directed.size());
  for (auto [u, v] : directed) {
    ++g.offsets_[u + 1];
    g.adj_.push_back(v);
  }
  for (Vertex v = 0; v < n; ++v) g.offsets_[v + 1] += g.offsets_[v];
  return g;
}

Graph Graph::empty(Vertex n) { return from_edges({}, n); }

bool Graph::has_edge(Vertex u, Vertex v) const noexcept {
  if (degree(u) > degree(v)) std::swap(u, v);
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edge_list() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(num_edges()));
  for (Vertex u = 0; u < n_; ++u) {
    for (Vertex v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Graph build_graph(std::span<const Edge> edges, Vertex n) { return Graph::from_edges(edges, n); }

bool VertexLabelling::is_complete() const noexcept {
  return std::none_of(states_.begin(), states_.end(),
                      [](Label l) { return l == Label::kUnlabelled; });
}

std::vector<Vertex> VertexLabelling::ones() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < size(); ++v) {
    if (states_[v] == Label::kOne) out.push_back(v);
  }
  return out;
}

bool VertexLabelling::is_consistent(const Graph& g) const {
  for (Vertex u = 0; u < size(); ++u) {
    if (states_[u] != Label::kOne) continue;
    for (Vertex v : g.neighbors(u)) {
      if (states_[v] == Label::kOne) return false;
    }
  }
  return true;
}

NormalizedAdjacency normalized_adjacency(const Graph& g) {
  const Vertex n = g.num_vertices();
  NormalizedAdjacency out;
  out.degrees.resize(static_cast<std::size_t>(n));
  std::vector<double> inv_sqrt(static_cast<std::size_t>(n), 0.0);
  for (Vertex v = 0; v < n; ++v) {
    out.degrees[v] = g.degree(v);
    if (g.degree(v) > 0) inv_sqrt[v] = 1.0 / std::sqrt(static_cast<double>(g.degree(v)));
  }
  out.matrix.resize(n, n);
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(2 * g.num_edges()));
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v : g.neighbors(u)) triplets.emplace_back(u, v, inv_sqrt[u] * inv_sqrt[v]);
  }
  out.matrix.setFromTriplets(triplets.begin(), triplets.end());
  out.matrix.makeCompressed();
  return out;
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> keep) {
  check_members(g, keep);
  InducedSubgraph out;
  out.from_parent.assign(static_cast<std::size_t>(g.num_vertices()), -1);
  std::vector<Vertex> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (Vertex i = 0; i < static_cast<Vertex>(sorted.size()); ++i) out.from_parent[sorted[i]] = i;

  std::vector<Edge> edges;
  for (Vertex u : sorted) {
    for (Vertex v : g.neighbors(u)) {
      if (u < v && out.from_parent[v] >= 0) edges.emplace_back(out.from_parent[u], out.from_parent[v]);
    }
  }
  out.graph = Graph::from_edges(edges, static_cast<Vertex>(sorted.size()));
  out.to_parent = std::move(sorted);
  return out;
}

bool is_independent_set(const Graph& g, std::span<const Vertex> s) {
  check_members(g, s);
  std::vector<char> in(static_cast<std::size_t>(g.num_vertices()), 0);
  for (Vertex v : s) in[v] = 1;
  for (Vertex u : s) {
    for (Vertex v : g.neighbors(u)) {
      if (in[v]) return false;
    }
  }
  return true;
}

bool is_vertex_cover(const Graph& g, std::span<const Vertex> s) {
  check_members(g, s);
  std::vector<char> in(static_cast<std::size_t>(g.num_vertices()), 0);
  for (Vertex v : s) in[v] = 1;
  for (Vertex u = 0; u < g.num_vertices(); ++u) {
    if (in[u]) continue;
    for (Vertex v : g.neighbors(u)) {
      if (!in[v]) return false;
    }
  }
  return true;
}

bool is_clique(const Graph& g, std::span<const Vertex> s) {
  check_members(g, s);
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (s[i] == s[j] || !g.has_edge(s[i], s[j])) return false;
    }
  }
  return true;
}

Graph permute_graph(const Graph& g, std::span<const Vertex> perm) {
  if (static_cast<Vertex>(perm.size()) != g.num_vertices()) {
    throw ContractViolation("permutation length does not match vertex count");
  }
  std::vector<char> seen(perm.size(), 0);
  for (Vertex p : perm) {
    if (p < 0 || p >= g.num_vertices() || seen[p]) throw ContractViolation("not a permutation");
    seen[p] = 1;
  }
  std::vector<Edge> edges;
  for (auto [u, v] : g.edge_list()) edges.emplace_back(perm[u], perm[v]);
  return Graph::from_edges(edges, g.num_vertices());
}

}  // namespace misgcn
