#include <doctest.h>

#include <random>

#include <nlohmann/json.hpp>

#include "misgcn/error.hpp"
#include "misgcn/gcn.hpp"
#include "misgcn/generators.hpp"
#include "misgcn/instance_io.hpp"
#include "misgcn/transforms.hpp"
#include "test_util.hpp"

using namespace misgcn;

TEST_CASE("parse_cnf") {
  SUBCASE("single clause") {
    const auto f = parse_cnf("p cnf 2 1\n1 -2 0");
    CHECK(f.num_vars == 2);
    CHECK(f.clauses == std::vector<Clause>{{1, -2}});
  }
  SUBCASE("comments") {
    const auto f = parse_cnf("c comment\np cnf 1 1\n1 0\n");
    CHECK(f.num_vars == 1);
    CHECK(f.num_clauses() == 1);
  }
  SUBCASE("clauses may span lines and share lines") {
    const auto f = parse_cnf("p cnf 3 2\n1 2\n3 0 -1 -2 0\n");
    CHECK(f.clauses == std::vector<Clause>{{1, 2, 3}, {-1, -2}});
  }
  SUBCASE("satlib trailer") {
    const auto f = parse_cnf("p cnf 2 1\n1 2 0\n%\n0\n\n");
    CHECK(f.num_clauses() == 1);
  }
  SUBCASE("duplicate literals merged") {
    const auto f = parse_cnf("p cnf 2 1\n2 1 2 0\n");
    CHECK(f.clauses[0] == Clause{2, 1});
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(parse_cnf("p cnf 3 3\n1 0\n2 0\n"), ParseError);
    CHECK_THROWS_AS(parse_cnf("p cnf 2 1\n1 3 0\n"), ParseError);
    CHECK_THROWS_AS(parse_cnf("p cnf 2 1\n1 -1 0\n"), ParseError);
    CHECK_THROWS_AS(parse_cnf("p cnf 2 2\n1 0\n0\n"), ParseError);
    CHECK_THROWS_AS(parse_cnf("p cnf 2 1\n1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_cnf("1 2 0\np cnf 2 1\n"), ParseError);
    CHECK_THROWS_AS(parse_cnf("p cnf 2 1\np cnf 2 1\n1 0\n"), ParseError);
    CHECK_THROWS_AS(parse_cnf("p cnf 2 1\n1 x 0\n"), ParseError);
    CHECK_THROWS_AS(parse_cnf(""), ParseError);
  }
  SUBCASE("error carries line number") {
    try {
      parse_cnf("c a\np cnf 2 1\n1 5 0\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
  }
}

TEST_CASE("cnf round trip") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    const CnfFormula f = random_ksat(8, 30, 3, rng);
    CHECK(parse_cnf(write_cnf(f)) == f);
  }
}

TEST_CASE("assignment files") {
  const Assignment a{true, false, true};
  CHECK(parse_assignment(write_assignment(a), 3) == a);
  CHECK(parse_assignment("v 1 -2 3 0\n", 3) == a);
  CHECK_THROWS_AS(parse_assignment("1\n-2\n", 3), ParseError);
  CHECK_THROWS_AS(parse_assignment("1\n-1\n2\n3\n", 3), ParseError);
  CHECK_THROWS_AS(parse_assignment("1\n2\n4\n", 3), ParseError);
}

TEST_CASE("parse_edge_list") {
  SUBCASE("P3") {
    const auto e = parse_edge_list("0 1\n1 2\n");
    CHECK(e.graph == testutil::path(3));
  }
  SUBCASE("orientation merge and id compaction") {
    const auto e = parse_edge_list("5 9\n9 5\n");
    CHECK(e.graph.num_vertices() == 2);
    CHECK(e.graph.num_edges() == 1);
    CHECK(e.ids == std::vector<std::int64_t>{5, 9});
  }
  SUBCASE("self-loop only") {
    const auto e = parse_edge_list("# hdr\n0 0\n");
    CHECK(e.graph.num_vertices() == 1);
    CHECK(e.graph.num_edges() == 0);
  }
  SUBCASE("tabs and blank lines") {
    const auto e = parse_edge_list("\n1\t2\n\n2 3\r\n");
    CHECK(e.graph.num_edges() == 2);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(parse_edge_list("0 1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_edge_list("0\n"), ParseError);
    CHECK_THROWS_AS(parse_edge_list("0 a\n"), ParseError);
    CHECK_THROWS_AS(parse_edge_list("-1 2\n"), ParseError);
  }
  SUBCASE("round trip") {
    const Graph g = testutil::petersen();
    const auto parsed = parse_edge_list(write_edge_list(g));
    CHECK(parsed.graph.num_edges() == g.num_edges());
    for (auto [a, b] : parsed.graph.edge_list())
      CHECK(g.has_edge(static_cast<Vertex>(parsed.ids[a]), static_cast<Vertex>(parsed.ids[b])));
  }
}

TEST_CASE("dimacs graph") {
  const Graph g = testutil::cycle(5);
  CHECK(parse_dimacs_graph(write_dimacs_graph(g)) == g);
  CHECK(parse_dimacs_graph("c x\np edge 3 1\ne 1 3\n").has_edge(0, 2));
  CHECK_THROWS_AS(parse_dimacs_graph("p edge 3 1\ne 1 4\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs_graph("e 1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs_graph("p edge 3 1\ne 0 1\n"), ParseError);
}

TEST_CASE("model files") {
  const auto widths = standard_widths(3, 5, 2);
  GcnModel model = init_model(3, widths, 17);
  model.metadata = {{"lr", "0.0001"}, {"seed", "17"}};
  SUBCASE("text round trip is exact") { CHECK(read_model(write_model(model)) == model); }
  SUBCASE("binary round trip is exact") {
    CHECK(read_model(write_model(model, ModelEncoding::kBinary)) == model);
  }
  SUBCASE("missing layer block") {
    std::string text = write_model(model);
    const auto cut = text.find("W0 2");
    REQUIRE(cut != std::string::npos);
    CHECK_THROWS_AS(read_model(text.substr(0, cut)), ParseError);
  }
  SUBCASE("truncated binary") {
    std::string bytes = write_model(model, ModelEncoding::kBinary);
    bytes.resize(bytes.size() - 8);
    CHECK_THROWS_AS(read_model(bytes), ParseError);
  }
  SUBCASE("wrong version") {
    std::string text = write_model(model);
    text.replace(0, std::string("misgcn-model 1").size(), "misgcn-model 9");
    CHECK_THROWS_AS(read_model(text), ParseError);
  }
  SUBCASE("zero model predicts one half") {
    const GcnModel zero = read_model(write_model(zero_model(widths)));
    const auto maps = forward(zero, testutil::petersen());
    for (int i = 0; i < maps.values.rows(); ++i)
      for (int j = 0; j < maps.values.cols(); ++j) CHECK(maps.values(i, j) == 0.5);
  }
}

TEST_CASE("problem kinds") {
  for (auto k : {ProblemKind::kMis, ProblemKind::kMvc, ProblemKind::kMc, ProblemKind::kSat})
    CHECK(parse_problem_kind(to_string(k)) == k);
  CHECK_THROWS(parse_problem_kind("tsp"));
}

TEST_CASE("write_solution") {
  ProblemInstance c4;
  c4.kind = ProblemKind::kMis;
  c4.id = "c4";
  c4.graph = testutil::cycle(4);

  SolutionReport r;
  r.kind = ProblemKind::kMis;
  r.instance_id = "c4";
  r.objective = 2;
  r.vertices = {0, 2};
  r.config = {{"threads", "1"}};

  SUBCASE("MIS document") {
    const std::string text = write_solution(r, c4);
    const auto doc = nlohmann::json::parse(text);
    CHECK(doc["objective"] == 2);
    CHECK(doc["vertices"] == std::vector<int>{0, 2});
    CHECK(doc["problem"] == "mis");
    CHECK(read_solution(text) == r);
  }
  SUBCASE("dependent set refused") {
    r.vertices = {0, 1};
    CHECK_THROWS_AS(write_solution(r, c4), ContractViolation);
  }
  SUBCASE("objective must match") {
    r.objective = 3;
    CHECK_THROWS_AS(write_solution(r, c4), ContractViolation);
  }
  SUBCASE("SAT lists every variable") {
    ProblemInstance sat;
    sat.kind = ProblemKind::kSat;
    sat.id = "f";
    sat.cnf = parse_cnf("p cnf 3 2\n1 2 -3 0\n-1 2 0\n");
    const auto map = sat_to_mis(*sat.cnf);
    sat.graph = map.graph;
    SolutionReport s;
    s.kind = ProblemKind::kSat;
    s.instance_id = "f";
    s.vertices = {0, 4};
    s.objective = 2;
    s.assignment = mis_to_sat_assignment(map, s.vertices);
    s.solved = true;
    const auto doc = nlohmann::json::parse(write_solution(s, sat));
    CHECK(doc["solved"] == true);
    CHECK(doc["assignment"].size() == 3);
    CHECK(read_solution(write_solution(s, sat)) == s);
  }
}
