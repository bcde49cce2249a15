#pragma once

#include <optional>
#include <span>
#include <vector>

#include "misgcn/graph.hpp"
#include "misgcn/instance_io.hpp"

namespace misgcn {

/// Where a SAT-graph vertex came from.
struct LiteralOccurrence {
  int clause = 0;
  Literal literal = 0;

  bool operator==(const LiteralOccurrence&) const = default;
};

/// SAT instance as an MIS instance: one vertex per literal occurrence,
/// cliques inside clauses, conflict edges between complementary literals in
/// different clauses.
struct SatMisMapping {
  Graph graph;
  /// vertex -> (clause, literal); vertices are numbered clause by clause.
  std::vector<LiteralOccurrence> occurrences;
  int num_clauses = 0;
  int num_vars = 0;
};

SatMisMapping sat_to_mis(const CnfFormula& f);

/// Assignment setting each selected literal true (unconstrained variables
/// false) when |s| equals the clause count, std::nullopt when smaller.
/// Throws ContractViolation if s is not independent, InternalError if it is
/// larger than the clause count.
std::optional<Assignment> mis_to_sat_assignment(const SatMisMapping& map, std::span<const Vertex> s);

/// V \ s. Throws ContractViolation if s is not independent.
std::vector<Vertex> mis_to_mvc(const Graph& g, std::span<const Vertex> s);

inline constexpr Vertex kDefaultComplementLimit = 20000;

/// Dense complement. Throws ResourceError above max_vertices.
Graph complement_graph(const Graph& g, Vertex max_vertices = kDefaultComplementLimit);

}  // namespace misgcn
