#include <doctest.h>

#include <random>

#include "misgcn/error.hpp"
#include "misgcn/generators.hpp"
#include "misgcn/kernelizer.hpp"
#include "misgcn/oracle.hpp"
#include "misgcn/tree_search.hpp"
#include "test_util.hpp"

using namespace misgcn;

namespace {

// u=0, v=1 share N = {a=2, b=3, c=4}; edge a-b.
Graph twin_graph(bool with_ab) {
  std::vector<Edge> e{{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}};
  if (with_ab) e.emplace_back(2, 3);
  return Graph::from_edges(e, 5);
}

std::vector<Vertex> sorted(std::vector<Vertex> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("reduce on small graphs") {
  SUBCASE("P2") {
    const auto k = reduce(testutil::path(2));
    CHECK(k.kernel.is_empty());
    CHECK(k.trace.offset == 1);
    CHECK(lift(k, {}).size() == 1);
  }
  SUBCASE("P3") {
    const auto k = reduce(testutil::path(3));
    CHECK(k.kernel.is_empty());
    CHECK(k.trace.offset == 2);
    CHECK(sorted(lift(k, {})) == std::vector<Vertex>{0, 2});
  }
  SUBCASE("C4") {
    const auto k = reduce(testutil::cycle(4));
    CHECK(k.kernel.is_empty());
    CHECK(k.trace.offset == 2);
    const auto s = lift(k, {});
    CHECK(s.size() == 2);
    CHECK(is_independent_set(testutil::cycle(4), s));
  }
  SUBCASE("twin example graph") {
    const Graph g = twin_graph(true);
    const auto k = reduce(g);
    const auto best = exact_mis(k.kernel);
    const auto s = lift(k, best.witness);
    CHECK(s.size() == 2);
    CHECK(is_independent_set(g, s));
  }
  SUBCASE("empty input") {
    const auto k = reduce(Graph::empty(0));
    CHECK(k.kernel.is_empty());
    CHECK(k.trace.offset == 0);
  }
  SUBCASE("K4 reduces by unconfined or twin rules") {
    const auto k = reduce(testutil::complete(4));
    CHECK(exact_mis(k.kernel).alpha.value() + k.trace.offset == 1);
  }
}

TEST_CASE("individual rules") {
  SUBCASE("fold on P3") {
    ReducibleGraph rg(testutil::path(3));
    CHECK(rg.is_foldable(1));
    const FoldEvent e = rg.apply_fold(1);
    CHECK(e.merged == 3);
    CHECK(rg.num_alive() == 1);
    CHECK(rg.alive(3));
    CHECK(event_offset(e) == 1);
    std::vector<ReductionEvent> events{e};
    events.push_back(rg.apply_isolated(3));
    const auto k = finish_kernelization(rg, events);
    CHECK(k.trace.offset == 2);
    CHECK(sorted(lift(k, {})) == std::vector<Vertex>{0, 2});
  }
  SUBCASE("fold lift when the merged vertex is chosen") {
    ReducibleGraph rg(testutil::path(3));
    std::vector<ReductionEvent> events{rg.apply_fold(1)};
    const auto k = finish_kernelization(rg, events);
    REQUIRE(k.kernel.num_vertices() == 1);
    CHECK(sorted(lift(k, std::vector<Vertex>{0})) == std::vector<Vertex>{0, 2});
    CHECK(lift(k, {}) == std::vector<Vertex>{1});
  }
  SUBCASE("pendant on a star leaf") {
    const Graph g = testutil::star(3);
    ReducibleGraph rg(g);
    std::vector<ReductionEvent> events{rg.apply_pendant(1)};
    CHECK_FALSE(rg.alive(0));
    CHECK_FALSE(rg.alive(1));
    events.push_back(rg.apply_isolated(2));
    events.push_back(rg.apply_isolated(3));
    const auto k = finish_kernelization(rg, events);
    CHECK(k.trace.offset == 3);
    CHECK(sorted(lift(k, {})) == std::vector<Vertex>{1, 2, 3});
  }
  SUBCASE("unconfined on P2") {
    ReducibleGraph rg(testutil::path(2));
    CHECK(rg.is_unconfined(0));
    const auto e = rg.apply_unconfined(0);
    CHECK(event_offset(e) == 0);
    CHECK_FALSE(rg.alive(0));
    CHECK(rg.alive(1));
  }
  SUBCASE("confined vertex") {
    // A P3 leaf grows S = {0, 2} and then has no candidate left.
    ReducibleGraph rg(testutil::path(3));
    CHECK(rg.is_unconfined(1));
    CHECK_FALSE(rg.is_unconfined(0));
  }
  SUBCASE("twin with an edge in the neighborhood") {
    const Graph g = twin_graph(true);
    ReducibleGraph rg(g);
    REQUIRE(rg.find_twin(0) == std::optional<Vertex>(1));
    const TwinEvent e = rg.apply_twin(0, 1);
    CHECK_FALSE(e.gadget);
    CHECK(event_offset(e) == 2);
    CHECK(rg.num_alive() == 0);
    std::vector<ReductionEvent> events{e};
    const auto k = finish_kernelization(rg, events);
    CHECK(sorted(lift(k, {})) == std::vector<Vertex>{0, 1});
    CHECK(testutil::brute_alpha(g) == 2);
  }
  SUBCASE("twin gadget with an independent neighborhood") {
    const Graph g = twin_graph(false);
    ReducibleGraph rg(g);
    const TwinEvent e = rg.apply_twin(0, 1);
    REQUIRE(e.gadget);
    CHECK(*e.gadget == 5);
    CHECK(rg.num_alive() == 1);
    std::vector<ReductionEvent> events{e};
    const auto k = finish_kernelization(rg, events);
    CHECK(k.trace.offset == 2);
    CHECK(sorted(lift(k, std::vector<Vertex>{0})) == std::vector<Vertex>{2, 3, 4});
    CHECK(sorted(lift(k, {})) == std::vector<Vertex>{0, 1});
  }
  SUBCASE("preconditions") {
    ReducibleGraph rg(testutil::cycle(5));
    CHECK_THROWS_AS(rg.apply_isolated(0), ContractViolation);
    CHECK_THROWS_AS(rg.apply_pendant(0), ContractViolation);
    CHECK_THROWS_AS(rg.apply_twin(0, 2), ContractViolation);
    ReducibleGraph tri(testutil::complete(3));
    CHECK_THROWS_AS(tri.apply_fold(0), ContractViolation);
  }
}

TEST_CASE("lift rejects dependent kernel sets") {
  const Graph g = testutil::cycle(7);
  const auto k = identity_kernelization(g);
  CHECK(lift(k, std::vector<Vertex>{0, 2}) == std::vector<Vertex>{0, 2});
  CHECK_THROWS_AS(lift(k, std::vector<Vertex>{0, 1}), ContractViolation);
}

TEST_CASE("kernel soundness against brute force") {
  std::mt19937_64 rng(404);
  const double ps[] = {0.1, 0.2, 0.3, 0.5};
  for (int trial = 0; trial < 300; ++trial) {
    const Vertex n = 1 + static_cast<Vertex>(rng() % 16);
    const Graph g = random_graph(n, ps[trial % 4], rng);
    const int alpha = testutil::brute_alpha(g);
    const auto k = reduce(g);
    CHECK(k.kernel.num_vertices() <= g.num_vertices() + static_cast<Vertex>(k.trace.events.size()));
    const auto best = exact_mis(k.kernel);
    REQUIRE(best.certified());
    CHECK(*best.alpha + k.trace.offset == alpha);
    const auto s = lift(k, best.witness);
    CHECK(static_cast<int>(s.size()) == alpha);
    CHECK(is_independent_set(g, s));

    // Any independent kernel set lifts to one of size |s| + offset.
    const auto greedy = min_degree_greedy(k.kernel);
    const auto lifted = lift(k, greedy);
    CHECK(lifted.size() == greedy.size() + static_cast<std::size_t>(k.trace.offset));
    CHECK(is_independent_set(g, lifted));
  }
}

TEST_CASE("reduce is deterministic") {
  std::mt19937_64 rng(9);
  const Graph g = random_graph(40, 0.08, rng);
  const auto a = reduce(g);
  const auto b = reduce(g);
  CHECK(a.kernel == b.kernel);
  CHECK(a.trace.offset == b.trace.offset);
  CHECK(a.trace.kernel_to_working == b.trace.kernel_to_working);
}
