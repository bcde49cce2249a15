#pragma once

#include <cstdint>
#include <random>

#include "misgcn/graph.hpp"
#include "misgcn/instance_io.hpp"

namespace misgcn {

/// Erdős–Rényi G(n, p).
Graph random_graph(Vertex n, double p, std::mt19937_64& rng);

/// Uniform random k-SAT: each clause has `width` distinct variables with
/// random signs. May be unsatisfiable.
CnfFormula random_ksat(int vars, int clauses, int width, std::mt19937_64& rng);

struct PlantedInstance {
  CnfFormula formula;
  Assignment assignment;
};

/// Random 3-SAT around a hidden assignment: clauses are redrawn until at
/// least one literal agrees with it, so the formula is satisfiable.
PlantedInstance planted_3sat(int vars, int clauses, std::uint64_t seed);

/// A random uniform permutation of [0, n).
std::vector<Vertex> random_permutation(Vertex n, std::mt19937_64& rng);

}  // namespace misgcn
