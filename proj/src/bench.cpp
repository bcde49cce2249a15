#include "misgcn/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>

#include <nlohmann/json.hpp>

#include "misgcn/error.hpp"
#include "misgcn/oracle.hpp"
#include "misgcn/solver.hpp"
#include "misgcn/transforms.hpp"

namespace misgcn {

namespace {

constexpr std::pair<Method, std::string_view> kMethodTags[] = {
    {Method::kClassic, "classic"},
    {Method::kBasic, "basic"},
    {Method::kBasicTree, "basic+tree"},
    {Method::kNoLocalSearch, "no-local-search"},
    {Method::kNoReduction, "no-reduction"},
    {Method::kFull, "full"},
    {Method::kFullParallel, "full-parallel"},
};

std::optional<InputFormat> format_for(const std::filesystem::path& p) {
  const std::string ext = p.extension().string();
  if (ext == ".cnf") return InputFormat::kCnf;
  if (ext == ".edges" || ext == ".edgelist" || ext == ".txt") return InputFormat::kEdgeList;
  if (ext == ".dimacs" || ext == ".col") return InputFormat::kDimacs;
  return std::nullopt;
}

std::vector<std::filesystem::path> sorted_files(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw ContractViolation("not a directory: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace

std::string_view to_string(Method m) {
  for (const auto& [method, tag] : kMethodTags) {
    if (method == m) return tag;
  }
  throw InternalError("unknown method");
}

Method parse_method(std::string_view tag) {
  for (const auto& [method, name] : kMethodTags) {
    if (name == tag) return method;
  }
  throw ParseError("unknown method tag '" + std::string(tag) + "'");
}

std::vector<Method> parse_method_list(std::string_view list) {
  std::vector<Method> out;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    const std::size_t comma = std::min(list.find(',', pos), list.size());
    const std::string_view tag = list.substr(pos, comma - pos);
    if (!tag.empty()) out.push_back(parse_method(tag));
    pos = comma + 1;
  }
  if (out.empty()) throw ParseError("empty method list");
  return out;
}

std::vector<BenchInstance> load_bench_dir(const std::filesystem::path& dir, std::uint64_t oracle_node_limit) {
  std::vector<BenchInstance> out;
  for (const auto& path : sorted_files(dir)) {
    const auto format = format_for(path);
    if (!format) continue;
    const ProblemKind kind = *format == InputFormat::kCnf ? ProblemKind::kSat : ProblemKind::kMis;
    BenchInstance item;
    item.id = path.filename().string();
    item.instance = load_instance(kind, *format, read_file(path), item.id);
    if (kind == ProblemKind::kSat) {
      item.optimum = item.instance.cnf->num_clauses();
    } else {
      item.optimum = exact_mis(item.instance.graph, oracle_node_limit).alpha;
    }
    out.push_back(std::move(item));
  }
  return out;
}

SearchConfig method_config(Method m, const BenchOptions& options) {
  SearchConfig config;
  config.time_budget_s = options.time_limit_s;
  config.seed = options.seed;
  config.maps = options.maps;
  switch (m) {
    case Method::kClassic:
    case Method::kBasic:
    case Method::kFull:
      break;
    case Method::kBasicTree:
      config.child_mode = ChildMode::kSampled;
      break;
    case Method::kNoLocalSearch:
      config.local_search = false;
      break;
    case Method::kNoReduction:
      config.reduction = false;
      config.rekernelize = false;
      break;
    case Method::kFullParallel:
      config.threads = std::max(2, options.threads);
      break;
  }
  return config;
}

BenchmarkRecord run_method(const BenchInstance& item, Method m, const GcnModel& model, const BenchOptions& options) {
  BenchmarkRecord record;
  record.instance = item.id;
  record.method = std::string(to_string(m));
  record.maps = options.maps == 0 ? model.num_maps() : options.maps;
  record.seed = options.seed;
  const auto start = std::chrono::steady_clock::now();
  try {
    const ProblemInstance& inst = item.instance;
    SearchConfig config = method_config(m, options);
    if (options.stop_at_optimum) config.target = item.optimum;
    std::vector<Vertex> mis;
    switch (m) {
      case Method::kClassic: {
        mis = min_degree_greedy(inst.graph);
        break;
      }
      case Method::kBasic:
        mis = basic_solve(inst.graph, model, config).vertices;
        break;
      default:
        mis = tree_search(inst.graph, model, config).vertices;
        break;
    }
    if (!is_independent_set(inst.graph, mis)) throw InternalError("method returned a dependent set");
    record.objective = static_cast<std::int64_t>(mis.size());
    if (inst.kind == ProblemKind::kSat) {
      const auto assignment = mis_to_sat_assignment(sat_to_mis(*inst.cnf), mis);
      if (assignment && !satisfies(*inst.cnf, *assignment)) throw InternalError("extracted assignment does not satisfy");
      record.solved = assignment.has_value();
    } else {
      record.solved = item.optimum && record.objective >= *item.optimum;
    }
  } catch (const std::exception& e) {
    record.error = e.what();
    record.solved = false;
  }
  record.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return record;
}

std::vector<MethodSummary> summarize(const std::vector<BenchmarkRecord>& records) {
  std::vector<MethodSummary> out;
  std::map<std::pair<std::string, int>, std::size_t> index;
  for (const auto& r : records) {
    const auto key = std::make_pair(r.method, r.maps);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, out.size()).first;
      out.push_back({r.method, r.maps});
    }
    MethodSummary& s = out[it->second];
    ++s.instances;
    s.solved += r.solved ? 1 : 0;
    s.failures += r.error.empty() ? 0 : 1;
    s.mean_objective += static_cast<double>(r.objective);
    s.mean_time_s += r.wall_time_s;
  }
  for (auto& s : out) {
    s.solved_pct = 100.0 * s.solved / s.instances;
    s.mean_objective /= s.instances;
    s.mean_time_s /= s.instances;
  }
  return out;
}

std::string format_bench(const std::vector<BenchmarkRecord>& records, const std::vector<MethodSummary>& summary) {
  nlohmann::ordered_json doc;
  doc["records"] = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json row;
    row["instance"] = r.instance;
    row["method"] = r.method;
    row["maps"] = r.maps;
    row["solved"] = r.solved;
    row["objective"] = r.objective;
    row["wall_time_s"] = r.wall_time_s;
    row["seed"] = r.seed;
    if (!r.error.empty()) row["error"] = r.error;
    doc["records"].push_back(std::move(row));
  }
  doc["summary"] = nlohmann::ordered_json::array();
  for (const auto& s : summary) {
    nlohmann::ordered_json row;
    row["method"] = s.method;
    row["maps"] = s.maps;
    row["instances"] = s.instances;
    row["solved"] = s.solved;
    row["solved_pct"] = s.solved_pct;
    row["mean_objective"] = s.mean_objective;
    row["mean_time_s"] = s.mean_time_s;
    row["failures"] = s.failures;
    doc["summary"].push_back(std::move(row));
  }
  return doc.dump(2) + "\n";
}

std::string format_summary_table(const std::vector<MethodSummary>& summary) {
  std::string out = "method            maps  solved%   mean_obj   mean_s  failures\n";
  char line[160];
  for (const auto& s : summary) {
    std::snprintf(line, sizeof line, "%-16s %5d  %6.1f%%  %9.2f  %7.3f  %8d\n", s.method.c_str(), s.maps,
                  s.solved_pct, s.mean_objective, s.mean_time_s, s.failures);
    out += line;
  }
  return out;
}

std::filesystem::path assignment_path(const std::filesystem::path& cnf) {
  std::filesystem::path p = cnf;
  p.replace_extension(".sol");
  return p;
}

TrainingSet make_training_set(const std::vector<CnfFormula>& formulas, const std::vector<Assignment>& assignments,
                              int labels_per_instance, std::uint64_t seed) {
  if (formulas.size() != assignments.size()) throw ContractViolation("one assignment per formula required");
  TrainingSet out;
  for (std::size_t i = 0; i < formulas.size(); ++i) {
    TrainingSample sample;
    sample.graph = sat_to_mis(formulas[i]).graph;
    sample.labels = synthesize_labels(formulas[i], assignments[i], labels_per_instance, seed + i);
    out.push_back(std::move(sample));
  }
  return out;
}

TrainingSet load_training_set(const std::filesystem::path& dir, int labels_per_instance, std::uint64_t seed) {
  std::vector<CnfFormula> formulas;
  std::vector<Assignment> assignments;
  for (const auto& path : sorted_files(dir)) {
    if (path.extension() != ".cnf") continue;
    CnfFormula f = parse_cnf(read_file(path));
    std::optional<Assignment> a;
    const auto sol = assignment_path(path);
    if (std::filesystem::exists(sol)) {
      a = parse_assignment(read_file(sol), f.num_vars);
    } else {
      a = dpll_sat(f);
    }
    if (!a) continue;
    formulas.push_back(std::move(f));
    assignments.push_back(std::move(*a));
  }
  return make_training_set(formulas, assignments, labels_per_instance, seed);
}

}  // namespace misgcn
