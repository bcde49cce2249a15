#pragma once

#include <array>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "misgcn/graph.hpp"

namespace misgcn {

// Reduction events. Vertex ids refer to the working graph: ids below the
// input vertex count are input vertices, larger ids are vertices created by
// folding or twin gadgets.

struct IsolatedEvent {
  Vertex v;
};
struct PendantEvent {
  Vertex v;
  Vertex neighbor;
};
/// v had degree 2 with non-adjacent neighbors u < w; all three became `merged`.
struct FoldEvent {
  Vertex u, v, w, merged;
};
struct UnconfinedEvent {
  Vertex v;
};
/// Degree-3 twins u, v with common neighborhood. `gadget` is set when the
/// neighborhood was edgeless; otherwise u and v were included directly.
struct TwinEvent {
  Vertex u, v;
  std::array<Vertex, 3> neighborhood;
  std::optional<Vertex> gadget;
};

using ReductionEvent = std::variant<IsolatedEvent, PendantEvent, FoldEvent, UnconfinedEvent, TwinEvent>;

/// Number of MIS vertices an event accounts for outside the kernel.
int event_offset(const ReductionEvent& event);

struct ReductionTrace {
  Vertex input_vertices = 0;
  Vertex working_vertices = 0;
  std::vector<ReductionEvent> events;
  /// alpha(input) == alpha(kernel) + offset.
  int offset = 0;
  /// kernel vertex -> working vertex.
  std::vector<Vertex> kernel_to_working;
};

/// Mutable graph the reduction rules operate on. Removed vertices keep their
/// ids; created vertices get the next unused id.
class ReducibleGraph {
 public:
  explicit ReducibleGraph(const Graph& g);

  Vertex capacity() const noexcept { return static_cast<Vertex>(adj_.size()); }
  Vertex input_vertices() const noexcept { return input_vertices_; }
  Vertex num_alive() const noexcept { return alive_count_; }
  bool alive(Vertex v) const noexcept { return alive_[v] != 0; }
  Vertex degree(Vertex v) const noexcept { return static_cast<Vertex>(adj_[v].size()); }
  std::span<const Vertex> neighbors(Vertex v) const noexcept { return adj_[v]; }
  bool has_edge(Vertex u, Vertex v) const noexcept;

  bool is_isolated(Vertex v) const;
  bool is_pendant(Vertex v) const;
  bool is_foldable(Vertex v) const;
  /// Confinement search: grows S from {v} through neighbors u with exactly
  /// one neighbor in S, choosing u minimizing |N(u) \ N[S]| (smallest id on
  /// ties). v is unconfined when some such u has no neighbor outside N[S].
  bool is_unconfined(Vertex v) const;
  /// Smallest-id degree-3 twin of u, if any.
  std::optional<Vertex> find_twin(Vertex u) const;

  // Each apply_* checks its precondition and throws ContractViolation when
  // it does not hold.
  IsolatedEvent apply_isolated(Vertex v);
  PendantEvent apply_pendant(Vertex v);
  FoldEvent apply_fold(Vertex v);
  UnconfinedEvent apply_unconfined(Vertex v);
  TwinEvent apply_twin(Vertex u, Vertex v);

  /// Alive vertices as a compact Graph plus the kernel -> working id map.
  std::pair<Graph, std::vector<Vertex>> compact() const;

 private:
  void remove_vertex(Vertex v);
  Vertex add_vertex(std::vector<Vertex> neighbors);
  void require_alive(Vertex v, const char* rule) const;

  Vertex input_vertices_ = 0;
  Vertex alive_count_ = 0;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<char> alive_;
};

struct Kernelization {
  Graph kernel;
  ReductionTrace trace;
};

/// Applies isolated, pendant, folding, unconfined and twin rules to a fixed
/// point. After every application the scan restarts at the first rule and
/// vertex 0, so the result is a deterministic function of the input.
Kernelization reduce(const Graph& g);

/// Kernelization that applies no rule (kernel == g, empty trace).
Kernelization identity_kernelization(const Graph& g);

/// Packages the current state of a ReducibleGraph with the events applied
/// to it.
Kernelization finish_kernelization(const ReducibleGraph& rg, std::vector<ReductionEvent> events);

/// Maps an independent set of the kernel to an independent set of the input
/// graph of size |kernel_solution| + offset, replaying events in reverse.
/// Throws ContractViolation if kernel_solution is not independent.
std::vector<Vertex> lift(const Kernelization& k, std::span<const Vertex> kernel_solution);

}  // namespace misgcn
