#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "misgcn/error.hpp"
#include "misgcn/generators.hpp"
#include "misgcn/graph.hpp"
#include "test_util.hpp"

using namespace misgcn;

TEST_CASE("build_graph canonicalizes edges") {
  SUBCASE("no edges") {
    std::vector<Edge> none;
    const Graph g = build_graph(none, 3);
    CHECK(g.num_vertices() == 3);
    CHECK(g.num_edges() == 0);
  }
  SUBCASE("duplicates and self-loops") {
    std::vector<Edge> e{{0, 1}, {1, 0}, {2, 2}};
    const Graph g = build_graph(e, 3);
    CHECK(g.num_edges() == 1);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 0));
    CHECK_FALSE(g.has_edge(2, 2));
    CHECK(g.edge_list() == std::vector<Edge>{{0, 1}});
  }
  SUBCASE("C4") {
    const Graph g = testutil::cycle(4);
    CHECK(g.num_edges() == 4);
    for (Vertex v = 0; v < 4; ++v) CHECK(g.degree(v) == 2);
  }
  SUBCASE("out of range") {
    std::vector<Edge> e{{0, 3}};
    CHECK_THROWS_AS(build_graph(e, 3), ParseError);
    std::vector<Edge> neg{{-1, 0}};
    CHECK_THROWS_AS(build_graph(neg, 3), ParseError);
  }
  SUBCASE("zero vertices") {
    const Graph g = Graph::empty(0);
    CHECK(g.is_empty());
    CHECK(g.num_edges() == 0);
  }
}

TEST_CASE("neighbor lists are sorted and symmetric") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = random_graph(15, 0.4, rng);
    std::int64_t total = 0;
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      auto nb = g.neighbors(v);
      CHECK(std::is_sorted(nb.begin(), nb.end()));
      CHECK(std::adjacent_find(nb.begin(), nb.end()) == nb.end());
      for (Vertex u : nb) {
        CHECK(u != v);
        CHECK(g.has_edge(u, v));
      }
      total += g.degree(v);
    }
    CHECK(total == 2 * g.num_edges());
  }
}

TEST_CASE("normalized adjacency") {
  SUBCASE("P2") {
    const auto a = normalized_adjacency(testutil::path(2));
    CHECK(a.matrix.coeff(0, 1) == doctest::Approx(1.0));
    CHECK(a.matrix.coeff(1, 0) == doctest::Approx(1.0));
    CHECK(a.matrix.coeff(0, 0) == 0.0);
  }
  SUBCASE("P3") {
    const auto a = normalized_adjacency(testutil::path(3));
    CHECK(a.matrix.coeff(0, 1) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(a.matrix.coeff(1, 2) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(a.matrix.coeff(0, 2) == 0.0);
  }
  SUBCASE("isolated vertex row is zero") {
    std::vector<Edge> e{{0, 1}};
    const auto a = normalized_adjacency(build_graph(e, 3));
    for (int j = 0; j < 3; ++j) CHECK(a.matrix.coeff(2, j) == 0.0);
    CHECK(a.degrees[2] == 0.0);
  }
}

TEST_CASE("induced subgraph") {
  SUBCASE("C4 keep {0,1}") {
    std::vector<Vertex> keep{0, 1};
    const auto sub = induced_subgraph(testutil::cycle(4), keep);
    CHECK(sub.graph == testutil::path(2));
    CHECK(sub.to_parent == std::vector<Vertex>{0, 1});
    CHECK(sub.from_parent == std::vector<Vertex>{0, 1, -1, -1});
  }
  SUBCASE("keep all is identity") {
    const Graph g = testutil::petersen();
    std::vector<Vertex> keep(10);
    std::iota(keep.begin(), keep.end(), 0);
    const auto sub = induced_subgraph(g, keep);
    CHECK(sub.graph == g);
    CHECK(sub.to_parent == keep);
  }
  SUBCASE("star leaves are isolated") {
    std::vector<Vertex> keep{3, 1, 2};
    const auto sub = induced_subgraph(testutil::star(3), keep);
    CHECK(sub.graph.num_vertices() == 3);
    CHECK(sub.graph.num_edges() == 0);
    CHECK(sub.to_parent == std::vector<Vertex>{1, 2, 3});
  }
}

TEST_CASE("set predicates") {
  const Graph c4 = testutil::cycle(4);
  std::vector<Vertex> opposite{0, 2}, adjacent{0, 1};
  CHECK(is_independent_set(c4, opposite));
  CHECK_FALSE(is_independent_set(c4, adjacent));
  std::vector<Vertex> p5_set{0, 2, 4};
  CHECK(is_independent_set(testutil::path(5), p5_set));
  CHECK(is_vertex_cover(c4, opposite));
  CHECK_FALSE(is_vertex_cover(c4, std::vector<Vertex>{0}));
  CHECK(is_clique(testutil::complete(4), std::vector<Vertex>{0, 1, 3}));
  CHECK_FALSE(is_clique(c4, opposite));
  CHECK(is_independent_set(c4, std::vector<Vertex>{}));
  CHECK_THROWS_AS(is_independent_set(c4, std::vector<Vertex>{7}), ContractViolation);
}

TEST_CASE("labelling") {
  const Graph p3 = testutil::path(3);
  VertexLabelling l(3);
  CHECK_FALSE(l.is_complete());
  l.set(0, Label::kOne);
  l.set(1, Label::kZero);
  l.set(2, Label::kOne);
  CHECK(l.is_complete());
  CHECK(l.is_consistent(p3));
  CHECK(l.ones() == std::vector<Vertex>{0, 2});
  l.set(1, Label::kOne);
  CHECK_FALSE(l.is_consistent(p3));
}

TEST_CASE("permute_graph relabels edges") {
  const Graph p3 = testutil::path(3);
  std::vector<Vertex> perm{2, 0, 1};
  const Graph q = permute_graph(p3, perm);
  CHECK(q.has_edge(2, 0));
  CHECK(q.has_edge(0, 1));
  CHECK_FALSE(q.has_edge(2, 1));
  std::vector<Vertex> bad{0, 0, 1};
  CHECK_THROWS(permute_graph(p3, bad));
}
