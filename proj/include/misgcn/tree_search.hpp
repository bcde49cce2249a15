#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "misgcn/gcn.hpp"
#include "misgcn/graph.hpp"
#include "misgcn/kernelizer.hpp"

namespace misgcn {

/// How an expansion derives its children from the network output.
enum class ChildMode {
  /// Child m follows probability map m (diverse maps).
  kMaps,
  /// Every child follows a random ordering sampled from map 0
  /// (weighted sampling without replacement). Tree search without diversity.
  kSampled,
};

struct SearchConfig {
  double time_budget_s = 10.0;
  int threads = 1;
  /// Number of maps used per expansion; 0 means all maps of the model.
  int maps = 0;
  std::size_t queue_capacity = 1'000'000;
  /// Kernelize the input graph before searching.
  bool reduction = true;
  /// Kernelize every residual graph after a labelling pass.
  bool rekernelize = true;
  bool local_search = true;
  std::uint64_t seed = 0;
  /// Stop as soon as a solution of this size is found.
  std::optional<int> target;
  /// Stop after this many expansions (0 = unlimited). Makes single-threaded
  /// runs independent of timing.
  std::uint64_t max_expansions = 0;
  ChildMode child_mode = ChildMode::kMaps;

  /// Throws ContractViolation on a negative budget or threads < 1.
  void validate() const;
};

struct BestUpdate {
  double seconds = 0.0;
  int size = 0;
};

struct BestSolution {
  /// Independent set in the input graph, ascending.
  std::vector<Vertex> vertices;
  int size = 0;
  /// Every improvement, in order; sizes strictly increase.
  std::vector<BestUpdate> log;
  std::uint64_t expansions = 0;
  /// Complete labellings produced.
  std::uint64_t solutions = 0;
  /// Hash of the expansion sequence (node ids popped, children produced).
  std::uint64_t digest = 0;
  double seconds = 0.0;
};

struct SearchStep;

/// Partial solution: the residual graph still to be labelled plus the chain
/// of labelling passes (and residual kernelizations) that produced it.
struct SearchNode {
  std::shared_ptr<const Graph> graph;
  std::shared_ptr<const SearchStep> history;
  int depth = 0;

  bool is_complete() const noexcept { return !graph || graph->is_empty(); }
};

struct SearchStep {
  std::shared_ptr<const SearchStep> parent;
  /// Vertices labelled ONE in the parent node's graph.
  std::vector<Vertex> chosen;
  /// Residual vertex -> parent node graph vertex.
  std::vector<Vertex> residual_to_parent;
  /// Present when the residual graph was kernelized into the child graph.
  std::optional<Kernelization> kernel;
};

/// One labelling pass over g: visit vertices by descending score (ties by
/// index), stop at the first already-labelled vertex, otherwise label it ONE
/// and its neighbors ZERO.
VertexLabelling greedy_labels(const Graph& g, std::span<const double> scores);

/// Root node for a kernelized input.
SearchNode make_root(const Kernelization& root);

/// Applies greedy_labels to the node's graph and returns the child whose
/// graph is the residual (kernelized when rekernelize is set).
SearchNode greedy_label_pass(const SearchNode& node, std::span<const double> scores, bool rekernelize);

/// Independent set of the input graph described by a complete node.
std::vector<Vertex> lift_node(const SearchNode& node, const Kernelization& root);

/// Greedy growing with map 0 until the graph is fully labelled, then lift
/// and (optionally) local search.
BestSolution basic_solve(const Graph& g, const GcnModel& model, const SearchConfig& config);

/// Randomized tree search over a queue of partial solutions. Runs
/// config.threads workers; with one thread the run is reproducible given
/// the seed and max_expansions.
BestSolution tree_search(const Graph& g, const GcnModel& model, const SearchConfig& config);

/// tree_search with config.threads >= 2 workers sharing the queue and the
/// best-solution cell. Throws ContractViolation when threads < 2.
BestSolution parallel_tree_search(const Graph& g, const GcnModel& model, const SearchConfig& config);

/// Classic baseline: repeatedly take a minimum-degree vertex of the
/// remaining graph and delete its neighbors.
std::vector<Vertex> min_degree_greedy(const Graph& g);

}  // namespace misgcn
