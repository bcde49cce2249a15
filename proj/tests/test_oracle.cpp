#include <doctest.h>

#include <random>

#include "misgcn/error.hpp"
#include "misgcn/generators.hpp"
#include "misgcn/oracle.hpp"
#include "test_util.hpp"

using namespace misgcn;

TEST_CASE("exact_mis on named graphs") {
  CHECK(exact_mis(testutil::cycle(4)).alpha == 2);
  CHECK(exact_mis(testutil::cycle(5)).alpha == 2);
  CHECK(exact_mis(testutil::path(5)).alpha == 3);
  CHECK(exact_mis(testutil::star(3)).alpha == 3);
  CHECK(exact_mis(testutil::complete(4)).alpha == 1);
  CHECK(exact_mis(testutil::petersen()).alpha == 4);
  CHECK(testutil::brute_alpha(testutil::petersen()) == 4);
  CHECK(exact_mis(Graph::empty(7)).alpha == 7);
  CHECK(exact_mis(Graph::empty(0)).alpha == 0);
}

TEST_CASE("exact_mis agrees with two independent enumerations") {
  std::mt19937_64 rng(77);
  const double ps[] = {0.1, 0.2, 0.3, 0.5, 0.8};
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = random_graph(1 + static_cast<Vertex>(rng() % 18), ps[trial % 5], rng);
    const auto r = exact_mis(g);
    REQUIRE(r.certified());
    const int brute = testutil::brute_alpha(g);
    CHECK(*r.alpha == brute);
    CHECK(static_cast<int>(r.witness.size()) == brute);
    CHECK(is_independent_set(g, r.witness));
    const auto e = enumerate_mis(g);
    CHECK(static_cast<int>(e.size()) == brute);
    CHECK(is_independent_set(g, e));
  }
}

TEST_CASE("exact_mis node limit reports unknown") {
  std::mt19937_64 rng(5);
  const Graph g = random_graph(120, 0.1, rng);
  const auto r = exact_mis(g, 3);
  CHECK_FALSE(r.certified());
  CHECK(is_independent_set(g, r.witness));
}

TEST_CASE("enumerate_mis size guard") { CHECK_THROWS_AS(enumerate_mis(Graph::empty(25)), ResourceError); }

TEST_CASE("dpll_sat") {
  CHECK_FALSE(dpll_sat(parse_cnf("p cnf 1 2\n1 0\n-1 0\n")));
  const CnfFormula f = parse_cnf("p cnf 2 2\n1 2 0\n-1 2 0\n");
  const auto a = dpll_sat(f);
  REQUIRE(a);
  CHECK((*a)[1]);
  CHECK(satisfies(f, *a));
  CHECK(dpll_sat(parse_cnf("p cnf 3 0\n")));
}

TEST_CASE("dpll agrees with truth-table enumeration") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const int vars = 8;
    const CnfFormula f = random_ksat(vars, 20 + trial % 30, 3, rng);
    bool any = false;
    for (unsigned mask = 0; mask < (1u << vars) && !any; ++mask) {
      Assignment a(vars);
      for (int v = 0; v < vars; ++v) a[v] = mask >> v & 1u;
      any = satisfies(f, a);
    }
    const auto d = dpll_sat(f);
    CHECK(d.has_value() == any);
    if (d) CHECK(satisfies(f, *d));
  }
}

TEST_CASE("planted formulas are satisfiable") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto p = planted_3sat(20, 91, seed);
    CHECK(satisfies(p.formula, p.assignment));
    CHECK(dpll_sat(p.formula).has_value());
    CHECK(p.formula.num_clauses() == 91);
  }
  CHECK(planted_3sat(20, 91, 3).formula == planted_3sat(20, 91, 3).formula);
}
