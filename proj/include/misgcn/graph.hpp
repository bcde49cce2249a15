#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/SparseCore>

namespace misgcn {

using Vertex = std::int32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Immutable undirected simple graph in CSR form. Neighbor lists are sorted,
/// symmetric and free of self-loops and duplicates.
class Graph {
 public:
  Graph() = default;

  /// Canonicalizes an arbitrary edge list: drops self-loops, merges
  /// duplicates and both orientations. Throws ParseError on indices outside
  /// [0, n).
  static Graph from_edges(std::span<const Edge> edges, Vertex n);

  /// n isolated vertices.
  static Graph empty(Vertex n);

  Vertex num_vertices() const noexcept { return n_; }
  std::int64_t num_edges() const noexcept { return static_cast<std::int64_t>(adj_.size()) / 2; }
  bool is_empty() const noexcept { return n_ == 0; }

  std::span<const Vertex> neighbors(Vertex v) const noexcept {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }
  Vertex degree(Vertex v) const noexcept {
    return static_cast<Vertex>(offsets_[v + 1] - offsets_[v]);
  }
  bool has_edge(Vertex u, Vertex v) const noexcept;

  /// Each undirected edge once, as (u, v) with u < v, in lexicographic order.
  std::vector<Edge> edge_list() const;

  bool operator==(const Graph&) const = default;

 private:
  Vertex n_ = 0;
  std::vector<std::int64_t> offsets_{0};
  std::vector<Vertex> adj_;
};

/// Same as Graph::from_edges.
Graph build_graph(std::span<const Edge> edges, Vertex n);

enum class Label : std::uint8_t { kUnlabelled = 0, kZero = 1, kOne = 2 };

/// Per-vertex state of a partial or complete solution.
class VertexLabelling {
 public:
  VertexLabelling() = default;
  explicit VertexLabelling(Vertex n) : states_(static_cast<std::size_t>(n), Label::kUnlabelled) {}

  Vertex size() const noexcept { return static_cast<Vertex>(states_.size()); }
  Label operator[](Vertex v) const noexcept { return states_[v]; }
  void set(Vertex v, Label l) noexcept { states_[v] = l; }

  bool is_complete() const noexcept;
  /// Vertices labelled ONE, ascending.
  std::vector<Vertex> ones() const;
  /// No edge has both endpoints labelled ONE.
  bool is_consistent(const Graph& g) const;

  bool operator==(const VertexLabelling&) const = default;

 private:
  std::vector<Label> states_;
};

/// D^{-1/2} A D^{-1/2} with zero rows/columns for isolated vertices.
struct NormalizedAdjacency {
  Eigen::SparseMatrix<double, Eigen::RowMajor> matrix;
  std::vector<double> degrees;
};

NormalizedAdjacency normalized_adjacency(const Graph& g);

struct InducedSubgraph {
  Graph graph;
  /// new index -> old index (ascending).
  std::vector<Vertex> to_parent;
  /// old index -> new index, or -1 when dropped.
  std::vector<Vertex> from_parent;
};

/// Subgraph induced on `keep`. New indices follow ascending old indices.
InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> keep);

bool is_independent_set(const Graph& g, std::span<const Vertex> s);
bool is_vertex_cover(const Graph& g, std::span<const Vertex> s);
bool is_clique(const Graph& g, std::span<const Vertex> s);

/// Relabels vertex v as perm[v].
Graph permute_graph(const Graph& g, std::span<const Vertex> perm);

}  // namespace misgcn
