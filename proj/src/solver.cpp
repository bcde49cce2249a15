#include "misgcn/solver.hpp"

#include <chrono>

#include "misgcn/error.hpp"
#include "misgcn/transforms.hpp"

namespace misgcn {

InputFormat parse_input_format(std::string_view name) {
  if (name == "cnf") return InputFormat::kCnf;
  if (name == "edgelist") return InputFormat::kEdgeList;
  if (name == "dimacs") return InputFormat::kDimacs;
  throw ParseError("unknown input format '" + std::string(name) + "'", 0);
}

ProblemInstance load_instance(ProblemKind kind, InputFormat format, std::string_view text, std::string id) {
  ProblemInstance instance;
  instance.kind = kind;
  instance.id = std::move(id);
  if (kind == ProblemKind::kSat) {
    if (format != InputFormat::kCnf) throw ParseError("sat instances must be given in cnf format", 0);
    instance.cnf = parse_cnf(text);
    instance.graph = sat_to_mis(*instance.cnf).graph;
    return instance;
  }
  switch (format) {
    case InputFormat::kCnf:
      throw ParseError("cnf input is only accepted with --problem sat", 0);
    case InputFormat::kEdgeList: {
      EdgeListGraph parsed = parse_edge_list(text);
      instance.graph = std::move(parsed.graph);
      instance.vertex_ids = std::move(parsed.ids);
      break;
    }
    case InputFormat::kDimacs:
      instance.graph = parse_dimacs_graph(text);
      break;
  }
  return instance;
}

namespace {

std::string bool_text(bool b) { return b ? "true" : "false"; }

std::vector<std::pair<std::string, std::string>> echo_config(const SearchConfig& config, int maps) {
  return {
      {"time_limit", std::to_string(config.time_budget_s)},
      {"threads", std::to_string(config.threads)},
      {"maps", std::to_string(maps)},
      {"reduction", bool_text(config.reduction)},
      {"local_search", bool_text(config.local_search)},
  };
}

}  // namespace

SolutionReport solve_problem(const ProblemInstance& instance, const GcnModel& model,
                             const SearchConfig& config, BestSolution* search, Vertex complement_limit) {
  const auto start = std::chrono::steady_clock::now();
  SolutionReport report;
  report.kind = instance.kind;
  report.instance_id = instance.id;
  report.seed = config.seed;
  report.config = echo_config(config, config.maps == 0 ? model.num_maps() : config.maps);

  BestSolution best;
  switch (instance.kind) {
    case ProblemKind::kMis:
      best = tree_search(instance.graph, model, config);
      report.vertices = best.vertices;
      report.objective = best.size;
      break;
    case ProblemKind::kMvc:
      best = tree_search(instance.graph, model, config);
      report.vertices = mis_to_mvc(instance.graph, best.vertices);
      report.objective = static_cast<std::int64_t>(report.vertices.size());
      break;
    case ProblemKind::kMc: {
      const Graph complement = complement_graph(instance.graph, complement_limit);
      best = tree_search(complement, model, config);
      report.vertices = best.vertices;
      report.objective = best.size;
      break;
    }
    case ProblemKind::kSat: {
      if (!instance.cnf) throw ContractViolation("sat instance without a formula");
      const SatMisMapping map = sat_to_mis(*instance.cnf);
      SearchConfig sat_config = config;
      if (!sat_config.target) sat_config.target = map.num_clauses;
      best = tree_search(map.graph, model, sat_config);
      report.vertices = best.vertices;
      report.objective = best.size;
      report.assignment = mis_to_sat_assignment(map, best.vertices);
      report.solved = report.assignment.has_value();
      break;
    }
  }
  report.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (auto problem = verify_report(report, instance)) throw InternalError("solver output failed verification: " + *problem);
  if (search) *search = std::move(best);
  return report;
}

}  // namespace misgcn
