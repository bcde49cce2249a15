#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "misgcn/error.hpp"
#include "misgcn/generators.hpp"
#include "misgcn/local_search.hpp"
#include "misgcn/oracle.hpp"
#include "test_util.hpp"

using namespace misgcn;

namespace {

std::vector<Vertex> random_independent_set(const Graph& g, std::mt19937_64& rng) {
  std::vector<Vertex> order(static_cast<std::size_t>(g.num_vertices()));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  const std::size_t keep = order.empty() ? 0 : rng() % (order.size() + 1);
  std::vector<Vertex> s;
  std::vector<char> blocked(order.size(), 0);
  for (std::size_t i = 0; i < keep; ++i) {
    const Vertex v = order[i];
    if (blocked[v]) continue;
    s.push_back(v);
    blocked[v] = 1;
    for (Vertex u : g.neighbors(v)) blocked[u] = 1;
  }
  return s;
}

bool is_maximal(const Graph& g, const std::vector<Vertex>& s) {
  std::vector<char> covered(static_cast<std::size_t>(g.num_vertices()), 0);
  for (Vertex v : s) {
    covered[v] = 1;
    for (Vertex u : g.neighbors(v)) covered[u] = 1;
  }
  return std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; });
}

}  // namespace

TEST_CASE("two_improve examples") {
  SUBCASE("P5 swap") {
    const Graph p5 = testutil::path(5);
    std::vector<Vertex> s{0, 3};
    CHECK_FALSE(verify_local_optimum(p5, s));
    LocalSearchStats stats;
    const auto out = two_improve(p5, s, {.audit = true}, &stats);
    CHECK(out == std::vector<Vertex>{0, 2, 4});
    CHECK(stats.swaps == 1);
  }
  SUBCASE("optimal C4 unchanged") {
    std::vector<Vertex> s{0, 2};
    CHECK(two_improve(testutil::cycle(4), s) == s);
  }
  SUBCASE("free insertions") {
    LocalSearchStats stats;
    CHECK(two_improve(Graph::empty(3), {}, {}, &stats) == std::vector<Vertex>{0, 1, 2});
    CHECK(stats.insertions == 3);
  }
  SUBCASE("dependent input") {
    std::vector<Vertex> s{0, 1};
    CHECK_THROWS_AS(two_improve(testutil::path(3), s), ContractViolation);
  }
  SUBCASE("maximum sets are local optima") {
    const Graph g = testutil::petersen();
    CHECK(verify_local_optimum(g, exact_mis(g).witness));
  }
}

TEST_CASE("two_improve contract on random inputs") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const Graph g = random_graph(1 + static_cast<Vertex>(rng() % 40), 0.05 + 0.1 * (trial % 5), rng);
    const auto s = random_independent_set(g, rng);
    const auto out = two_improve(g, s, {.audit = true});
    CHECK(out.size() >= s.size());
    CHECK(is_independent_set(g, out));
    CHECK(is_maximal(g, out));
    CHECK(verify_local_optimum(g, out));
  }
}
