#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "misgcn/graph.hpp"
#include "misgcn/instance_io.hpp"

namespace misgcn {

struct OracleResult {
  /// Certified optimum, or std::nullopt when the node budget ran out.
  std::optional<int> alpha;
  /// Best independent set found (a maximum one when alpha is set).
  std::vector<Vertex> witness;
  std::uint64_t expansions = 0;
  double seconds = 0.0;

  bool certified() const noexcept { return alpha.has_value(); }
};

inline constexpr std::uint64_t kDefaultOracleNodeLimit = 50'000'000;

/// Exact maximum independent set by branch and bound: branch on a
/// maximum-degree vertex, greedy lower bound, greedy clique-cover upper
/// bound. Never returns a wrong optimum; reports "unknown" instead.
OracleResult exact_mis(const Graph& g, std::uint64_t node_limit = kDefaultOracleNodeLimit);

/// Maximum independent set by enumerating all 2^n subsets. n <= 24.
std::vector<Vertex> enumerate_mis(const Graph& g);

/// Exact satisfiability by DPLL (unit propagation + branching).
std::optional<Assignment> dpll_sat(const CnfFormula& f);

}  // namespace misgcn
