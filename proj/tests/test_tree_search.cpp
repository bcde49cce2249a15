#include <doctest.h>

#include <random>
#include <set>

#include "misgcn/error.hpp"
#include "misgcn/generators.hpp"
#include "misgcn/local_search.hpp"
#include "misgcn/oracle.hpp"
#include "misgcn/tree_search.hpp"
#include "test_util.hpp"

using namespace misgcn;

TEST_CASE("greedy_labels") {
  const Graph star = testutil::star(3);
  SUBCASE("center first") {
    const std::vector<double> scores{0.9, 0.1, 0.2, 0.3};
    const auto l = greedy_labels(star, scores);
    CHECK(l.ones() == std::vector<Vertex>{0});
    CHECK(l.is_complete());
  }
  SUBCASE("leaves first") {
    const std::vector<double> scores{0.1, 0.9, 0.8, 0.7};
    const auto l = greedy_labels(star, scores);
    CHECK(l.ones() == std::vector<Vertex>{1, 2, 3});
    CHECK(l[0] == Label::kZero);
  }
  SUBCASE("stops at the first labelled vertex") {
    const std::vector<double> scores{0.8, 0.9, 0.1, 0.2};
    const auto l = greedy_labels(star, scores);
    CHECK(l.ones() == std::vector<Vertex>{1});
    CHECK(l[0] == Label::kZero);
    CHECK(l[2] == Label::kUnlabelled);
  }
  SUBCASE("uniform scores on an edgeless graph") {
    const std::vector<double> scores(3, 0.5);
    const auto l = greedy_labels(Graph::empty(3), scores);
    CHECK(l.ones() == std::vector<Vertex>{0, 1, 2});
  }
  SUBCASE("length mismatch") {
    const std::vector<double> scores(2, 0.5);
    CHECK_THROWS_AS(greedy_labels(star, scores), ContractViolation);
  }
}

TEST_CASE("greedy passes reach a complete node") {
  SUBCASE("star, interrupted first pass") {
    const Graph star = testutil::star(3);
    const auto root_kernel = identity_kernelization(star);
    SearchNode node = make_root(root_kernel);
    const std::vector<double> scores{0.8, 0.9, 0.1, 0.2};
    node = greedy_label_pass(node, scores, false);
    CHECK(node.graph->num_vertices() == 2);
    while (!node.is_complete()) {
      const std::vector<double> s(static_cast<std::size_t>(node.graph->num_vertices()), 0.5);
      node = greedy_label_pass(node, s, false);
    }
    const auto s = lift_node(node, root_kernel);
    CHECK(s == std::vector<Vertex>{1, 2, 3});
  }
  SUBCASE("residual strictly shrinks") {
    std::mt19937_64 rng(3);
    const Graph g = random_graph(30, 0.2, rng);
    const auto root_kernel = identity_kernelization(g);
    SearchNode node = make_root(root_kernel);
    std::uniform_real_distribution<double> unit;
    while (!node.is_complete()) {
      std::vector<double> s(static_cast<std::size_t>(node.graph->num_vertices()));
      for (auto& x : s) x = unit(rng);
      const Vertex before = node.graph->num_vertices();
      node = greedy_label_pass(node, s, true);
      CHECK(node.graph->num_vertices() < before);
    }
    CHECK(is_independent_set(g, lift_node(node, root_kernel)));
  }
  SUBCASE("incomplete nodes cannot be lifted") {
    const auto k = identity_kernelization(testutil::cycle(4));
    CHECK_THROWS_AS(lift_node(make_root(k), k), ContractViolation);
  }
}

TEST_CASE("basic_solve") {
  const GcnModel zero = zero_model(standard_widths(2, 4, 2));
  SearchConfig config;
  SUBCASE("empty graph") { CHECK(basic_solve(Graph::empty(0), zero, config).size == 0); }
  SUBCASE("P3 without reductions or local search is maximal") {
    config.reduction = false;
    config.rekernelize = false;
    config.local_search = false;
    const auto r = basic_solve(testutil::path(3), zero, config);
    CHECK(r.size >= 1);
    CHECK(is_independent_set(testutil::path(3), r.vertices));
  }
  SUBCASE("P3 with local search is optimal") {
    config.reduction = false;
    config.rekernelize = false;
    CHECK(basic_solve(testutil::path(3), zero, config).size == 2);
  }
}

TEST_CASE("tree_search") {
  const GcnModel model = init_model(3, standard_widths(3, 8, 2), 7);
  SearchConfig config;
  config.time_budget_s = 5.0;
  config.max_expansions = 50;

  SUBCASE("C4 without reductions reaches both optima") {
    // C4 is vertex-transitive, so every map is constant and index
    // tie-breaking fixes the first pick; sampled children vary it.
    config.reduction = false;
    config.rekernelize = false;
    config.local_search = false;
    config.target = 2;
    config.child_mode = ChildMode::kSampled;
    const Graph c4 = testutil::cycle(4);
    std::set<std::vector<Vertex>> seen;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      config.seed = seed;
      const auto r = tree_search(c4, model, config);
      CHECK(r.size == 2);
      seen.insert(r.vertices);
    }
    CHECK(seen.count({0, 2}) == 1);
    CHECK(seen.count({1, 3}) == 1);
  }
  SUBCASE("same seed, one thread is reproducible") {
    std::mt19937_64 rng(1);
    const Graph g = random_graph(60, 0.1, rng);
    config.seed = 99;
    config.reduction = false;
    config.rekernelize = false;
    const auto a = tree_search(g, model, config);
    const auto b = tree_search(g, model, config);
    CHECK(a.vertices == b.vertices);
    CHECK(a.digest == b.digest);
    CHECK(a.expansions == b.expansions);
    CHECK(a.expansions == 50);
  }
  SUBCASE("best-size log increases strictly") {
    std::mt19937_64 rng(2);
    const Graph g = random_graph(80, 0.08, rng);
    config.max_expansions = 200;
    const auto r = tree_search(g, model, config);
    for (std::size_t i = 1; i < r.log.size(); ++i) CHECK(r.log[i].size > r.log[i - 1].size);
    CHECK(r.log.back().size == r.size);
    CHECK(is_independent_set(g, r.vertices));
  }
  SUBCASE("zero budget returns the lifted kernel solution") {
    config.time_budget_s = 0.0;
    const Graph p3 = testutil::path(3);
    const auto r = tree_search(p3, model, config);
    CHECK(r.size == 2);
    CHECK(r.expansions == 0);
  }
  SUBCASE("target stops early") {
    std::mt19937_64 rng(6);
    const Graph g = random_graph(16, 0.3, rng);
    config.target = *exact_mis(g).alpha;
    config.max_expansions = 0;
    config.time_budget_s = 30.0;
    const auto r = tree_search(g, model, config);
    CHECK(r.size == *config.target);
    CHECK(r.seconds < 10.0);
  }
  SUBCASE("parallel workers") {
    std::mt19937_64 rng(4);
    const Graph g = random_graph(100, 0.05, rng);
    config.max_expansions = 0;
    config.time_budget_s = 0.3;
    for (int t : {2, 4}) {
      config.threads = t;
      const auto r = parallel_tree_search(g, model, config);
      CHECK(is_independent_set(g, r.vertices));
      for (std::size_t i = 1; i < r.log.size(); ++i) CHECK(r.log[i].size > r.log[i - 1].size);
    }
    config.threads = 1;
    CHECK_THROWS_AS(parallel_tree_search(g, model, config), ContractViolation);
  }
  SUBCASE("sampled children") {
    std::mt19937_64 rng(8);
    const Graph g = random_graph(40, 0.1, rng);
    config.child_mode = ChildMode::kSampled;
    const auto r = tree_search(g, model, config);
    CHECK(is_independent_set(g, r.vertices));
  }
  SUBCASE("bad configs") {
    config.threads = 0;
    CHECK_THROWS_AS(tree_search(testutil::cycle(4), model, config), ContractViolation);
    config.threads = 1;
    config.maps = 3;
    CHECK_THROWS_AS(tree_search(testutil::cycle(5), model, config), ContractViolation);
    config.maps = 0;
    config.time_budget_s = -1;
    CHECK_THROWS_AS(tree_search(testutil::cycle(4), model, config), ContractViolation);
  }
}

TEST_CASE("min_degree_greedy") {
  CHECK(min_degree_greedy(testutil::star(3)) == std::vector<Vertex>{1, 2, 3});
  std::mt19937_64 rng(2);
  for (int i = 0; i < 50; ++i) {
    const Graph g = random_graph(30, 0.15, rng);
    const auto s = min_degree_greedy(g);
    CHECK(is_independent_set(g, s));
    CHECK(two_improve(g, s).size() >= s.size());
  }
}
