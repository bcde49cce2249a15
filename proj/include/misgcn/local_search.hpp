#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "misgcn/graph.hpp"

namespace misgcn {

struct LocalSearchOptions {
  /// Recount tightness from scratch after every move and throw
  /// InternalError on mismatch. Quadratic; meant for tests.
  bool audit = false;
};

struct LocalSearchStats {
  std::uint64_t insertions = 0;
  std::uint64_t swaps = 0;
};

/// 2-improvement local search. Inserts every free (0-tight) vertex, then
/// repeatedly replaces a solution vertex by two non-adjacent 1-tight
/// neighbors until no such move exists. The result is maximal and never
/// smaller than s. Throws ContractViolation if s is not independent.
std::vector<Vertex> two_improve(const Graph& g, std::span<const Vertex> s,
                                const LocalSearchOptions& options = {},
                                LocalSearchStats* stats = nullptr);

/// Brute-force check that s admits no free insertion and no 2-improvement.
bool verify_local_optimum(const Graph& g, std::span<const Vertex> s);

}  // namespace misgcn
