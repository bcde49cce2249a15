#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "misgcn/error.hpp"
#include "misgcn/gcn.hpp"
#include "misgcn/generators.hpp"
#include "misgcn/instance_io.hpp"
#include "misgcn/kernelizer.hpp"
#include "misgcn/local_search.hpp"
#include "misgcn/oracle.hpp"
#include "misgcn/solver.hpp"
#include "misgcn/transforms.hpp"
#include "misgcn/tree_search.hpp"

namespace py = pybind11;
using namespace misgcn;

namespace {

Graph graph_from_pairs(Vertex n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
  return Graph::from_edges(edges, n);
}

std::string solve_text(const std::string& problem, const std::string& text, const std::string& format,
                       const GcnModel* model, double time_limit, int threads, std::uint64_t seed, int maps,
                       bool reduction, bool local_search) {
  const ProblemInstance instance =
      load_instance(parse_problem_kind(problem), parse_input_format(format), text, "input");
  SearchConfig config;
  config.time_budget_s = time_limit;
  config.threads = threads;
  config.seed = seed;
  config.maps = maps;
  config.reduction = reduction;
  config.rekernelize = reduction;
  config.local_search = local_search;
  const GcnModel fallback = model ? GcnModel{} : init_model(20, standard_widths(20, 32, 32), seed);
  const SolutionReport report = solve_problem(instance, model ? *model : fallback, config);
  return write_solution(report, instance);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "GCN-guided maximum independent set solver";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_MemoryError);
  py::register_exception<DivergenceError>(m, "DivergenceError", PyExc_ArithmeticError);
  py::register_exception<InternalError>(m, "InternalError", PyExc_RuntimeError);

  py::class_<Graph>(m, "Graph")
      .def(py::init(&graph_from_pairs), py::arg("n"), py::arg("edges"))
      .def_property_readonly("num_vertices", &Graph::num_vertices)
      .def_property_readonly("num_edges", &Graph::num_edges)
      .def("neighbors",
           [](const Graph& g, Vertex v) {
             if (v < 0 || v >= g.num_vertices()) throw py::index_error("vertex out of range");
             auto nb = g.neighbors(v);
             return std::vector<Vertex>(nb.begin(), nb.end());
           })
      .def("edges", &Graph::edge_list)
      .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
      .def("__repr__", [](const Graph& g) {
        return "<Graph n=" + std::to_string(g.num_vertices()) + " m=" + std::to_string(g.num_edges()) + ">";
      });

  py::class_<CnfFormula>(m, "CnfFormula")
      .def_readonly("num_vars", &CnfFormula::num_vars)
      .def_readonly("clauses", &CnfFormula::clauses)
      .def("satisfied_by", &satisfies);

  m.def("parse_cnf", [](const std::string& text) { return parse_cnf(text); });
  m.def("write_cnf", &write_cnf);
  m.def("parse_edge_list", [](const std::string& text) { return parse_edge_list(text).graph; });
  m.def("sat_to_mis", [](const CnfFormula& f) { return sat_to_mis(f).graph; });
  m.def("complement", [](const Graph& g) { return complement_graph(g); });
  m.def("is_independent_set", [](const Graph& g, const std::vector<Vertex>& s) { return is_independent_set(g, s); });

  m.def(
      "exact_mis",
      [](const Graph& g, std::uint64_t node_limit) {
        const auto r = exact_mis(g, node_limit);
        return py::make_tuple(r.alpha ? py::cast(*r.alpha) : py::none(), r.witness);
      },
      py::arg("graph"), py::arg("node_limit") = kDefaultOracleNodeLimit,
      "Returns (alpha or None when the node budget ran out, best set found).");
  m.def("dpll_sat", &dpll_sat);

  py::class_<Kernelization>(m, "Kernelization")
      .def_readonly("kernel", &Kernelization::kernel)
      .def_property_readonly("offset", [](const Kernelization& k) { return k.trace.offset; })
      .def("lift", [](const Kernelization& k, const std::vector<Vertex>& s) { return lift(k, s); });
  m.def("reduce", &reduce);

  m.def(
      "two_improve", [](const Graph& g, const std::vector<Vertex>& s) { return two_improve(g, s); },
      py::arg("graph"), py::arg("solution"));
  m.def("verify_local_optimum", [](const Graph& g, const std::vector<Vertex>& s) { return verify_local_optimum(g, s); });

  py::class_<GcnModel>(m, "Model")
      .def_property_readonly("widths", [](const GcnModel& model) { return model.widths; })
      .def_property_readonly("num_maps", &GcnModel::num_maps)
      .def_readonly("metadata", &GcnModel::metadata)
      .def("__eq__", [](const GcnModel& a, const GcnModel& b) { return a == b; });
  m.def(
      "init_model",
      [](int layers, int width, int maps, std::uint64_t seed) {
        return init_model(layers, standard_widths(layers, width, maps), seed);
      },
      py::arg("layers") = 20, py::arg("width") = 32, py::arg("maps") = 32, py::arg("seed") = 0);
  m.def("read_model", [](const py::bytes& b) { return read_model(std::string(b)); });
  m.def(
      "write_model",
      [](const GcnModel& model, bool binary) {
        return py::bytes(write_model(model, binary ? ModelEncoding::kBinary : ModelEncoding::kText));
      },
      py::arg("model"), py::arg("binary") = false);
  m.def("forward", [](const GcnModel& model, const Graph& g) { return forward(model, g).values; });

  m.def(
      "planted_3sat",
      [](int vars, int clauses, std::uint64_t seed) {
        auto p = planted_3sat(vars, clauses, seed);
        return py::make_tuple(std::move(p.formula), std::move(p.assignment));
      },
      py::arg("vars"), py::arg("clauses"), py::arg("seed") = 0);

  m.def(
      "tree_search",
      [](const Graph& g, const GcnModel& model, double time_limit, int threads, std::uint64_t seed,
         std::uint64_t max_expansions) {
        SearchConfig config;
        config.time_budget_s = time_limit;
        config.threads = threads;
        config.seed = seed;
        config.max_expansions = max_expansions;
        py::gil_scoped_release release;
        return tree_search(g, model, config).vertices;
      },
      py::arg("graph"), py::arg("model"), py::arg("time_limit") = 1.0, py::arg("threads") = 1,
      py::arg("seed") = 0, py::arg("max_expansions") = 0);

  m.def("solve_json", &solve_text, py::arg("problem"), py::arg("text"), py::arg("format"),
        py::arg("model") = nullptr, py::arg("time_limit") = 10.0, py::arg("threads") = 1, py::arg("seed") = 0,
        py::arg("maps") = 0, py::arg("reduction") = true, py::arg("local_search") = true);
}
