#include "misgcn/generators.hpp"

#include <algorithm>
#include <numeric>

#include "misgcn/error.hpp"

namespace misgcn {

Graph random_graph(Vertex n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.emplace_back(u, v);
    }
  }
  return Graph::from_edges(edges, n);
}

namespace {

Clause random_clause(int vars, int width, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> var(1, vars);
  std::bernoulli_distribution sign(0.5);
  Clause clause;
  while (static_cast<int>(clause.size()) < width) {
    const int v = var(rng);
    if (std::any_of(clause.begin(), clause.end(), [&](Literal l) { return std::abs(l) == v; })) continue;
    clause.push_back(sign(rng) ? v : -v);
  }
  return clause;
}

}  // namespace

CnfFormula random_ksat(int vars, int clauses, int width, std::mt19937_64& rng) {
  if (width < 1 || width > vars) throw ContractViolation("clause width must be in [1, vars]");
  CnfFormula f;
  f.num_vars = vars;
  for (int c = 0; c < clauses; ++c) f.clauses.push_back(random_clause(vars, width, rng));
  return f;
}

PlantedInstance planted_3sat(int vars, int clauses, std::uint64_t seed) {
  if (vars < 3) throw ContractViolation("planted 3-SAT needs at least 3 variables");
  std::mt19937_64 rng(seed);
  PlantedInstance out;
  std::bernoulli_distribution coin(0.5);
  out.assignment.resize(static_cast<std::size_t>(vars));
  for (int v = 0; v < vars; ++v) out.assignment[v] = coin(rng);
  out.formula.num_vars = vars;
  while (out.formula.num_clauses() < clauses) {
    Clause clause = random_clause(vars, 3, rng);
    const bool agrees = std::any_of(clause.begin(), clause.end(), [&](Literal l) {
      return out.assignment[std::abs(l) - 1] == (l > 0);
    });
    if (agrees) out.formula.clauses.push_back(std::move(clause));
  }
  return out;
}

std::vector<Vertex> random_permutation(Vertex n, std::mt19937_64& rng) {
  std::vector<Vertex> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Vertex{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

}  // namespace misgcn
