#include "misgcn/transforms.hpp"

#include <algorithm>
#include <string>

#include "misgcn/error.hpp"

namespace misgcn {

SatMisMapping sat_to_mis(const CnfFormula& f) {
  SatMisMapping map;
  map.num_clauses = f.num_clauses();
  map.num_vars = f.num_vars;
  std::vector<Edge> edges;
  // occurrences of each literal, indexed by variable and sign
  std::vector<std::vector<Vertex>> positive(static_cast<std::size_t>(f.num_vars) + 1);
  std::vector<std::vector<Vertex>> negative(static_cast<std::size_t>(f.num_vars) + 1);

  for (int c = 0; c < f.num_clauses(); ++c) {
    const auto first = static_cast<Vertex>(map.occurrences.size());
    for (Literal lit : f.clauses[c]) {
      const auto v = static_cast<Vertex>(map.occurrences.size());
      map.occurrences.push_back({c, lit});
      for (Vertex u = first; u < v; ++u) edges.emplace_back(u, v);
      (lit > 0 ? positive : negative)[std::abs(lit)].push_back(v);
    }
  }
  for (int var = 1; var <= f.num_vars; ++var) {
    for (Vertex p : positive[var]) {
      for (Vertex q : negative[var]) {
        if (map.occurrences[p].clause != map.occurrences[q].clause) edges.emplace_back(p, q);
      }
    }
  }
  map.graph = Graph::from_edges(edges, static_cast<Vertex>(map.occurrences.size()));
  return map;
}

std::optional<Assignment> mis_to_sat_assignment(const SatMisMapping& map, std::span<const Vertex> s) {
  if (!is_independent_set(map.graph, s)) throw ContractViolation("selected literals are not independent");
  std::vector<Vertex> unique(s.begin(), s.end());
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
  if (static_cast<int>(unique.size()) > map.num_clauses) {
    throw InternalError("independent set of size " + std::to_string(unique.size()) +
                        " exceeds the clause count " + std::to_string(map.num_clauses));
  }
  if (static_cast<int>(unique.size()) < map.num_clauses) return std::nullopt;

  Assignment assignment(static_cast<std::size_t>(map.num_vars), false);
  for (Vertex v : unique) {
    const Literal lit = map.occurrences[v].literal;
    assignment[std::abs(lit) - 1] = lit > 0;
  }
  // One literal per clause is set true; conflicts are excluded by the
  // x / not-x edges, so this can only fail on an inconsistent mapping.
  for (Vertex v : unique) {
    const Literal lit = map.occurrences[v].literal;
    if (assignment[std::abs(lit) - 1] != (lit > 0)) throw InternalError("conflicting literal selection");
  }
  return assignment;
}

std::vector<Vertex> mis_to_mvc(const Graph& g, std::span<const Vertex> s) {
  if (!is_independent_set(g, s)) throw ContractViolation("set is not independent");
  std::vector<char> in(static_cast<std::size_t>(g.num_vertices()), 0);
  for (Vertex v : s) in[v] = 1;
  std::vector<Vertex> cover;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (!in[v]) cover.push_back(v);
  }
  return cover;
}

Graph complement_graph(const Graph& g, Vertex max_vertices) {
  const Vertex n = g.num_vertices();
  if (n > max_vertices) {
    throw ResourceError("complement of a " + std::to_string(n) +
                        "-vertex graph exceeds the limit of " + std::to_string(max_vertices) +
                        " vertices");
  }
  std::vector<Edge> edges;
  const auto total = static_cast<std::int64_t>(n) * (n - 1) / 2 - g.num_edges();
  edges.reserve(static_cast<std::size_t>(std::max<std::int64_t>(total, 0)));
  for (Vertex u = 0; u < n; ++u) {
    auto nb = g.neighbors(u);
    auto it = std::upper_bound(nb.begin(), nb.end(), u);
    for (Vertex v = u + 1; v < n; ++v) {
      if (it != nb.end() && *it == v) {
        ++it;
        continue;
      }
      edges.emplace_back(u, v);
    }
  }
  return Graph::from_edges(edges, n);
}

}  // namespace misgcn
