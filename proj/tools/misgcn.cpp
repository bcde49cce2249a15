// misgcn command line: solve, train, gen, bench, convert, oracle.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "misgcn/bench.hpp"
#include "misgcn/error.hpp"
#include "misgcn/generators.hpp"
#include "misgcn/oracle.hpp"
#include "misgcn/solver.hpp"
#include "misgcn/training.hpp"
#include "misgcn/transforms.hpp"

namespace fs = std::filesystem;
using namespace misgcn;

namespace {

enum Exit : int { kOk = 0, kUsage = 1, kUnsolved = 2, kResource = 3, kDiverged = 4 };

constexpr int kDefaultLayers = 20;
constexpr int kDefaultWidth = 32;
constexpr int kDefaultMaps = 32;

GcnModel load_or_init_model(const std::string& path, std::uint64_t seed) {
  if (!path.empty()) return read_model(read_file(path));
  return init_model(kDefaultLayers, standard_widths(kDefaultLayers, kDefaultWidth, kDefaultMaps), seed);
}

InputFormat guess_format(const fs::path& p) {
  const auto ext = p.extension().string();
  if (ext == ".cnf") return InputFormat::kCnf;
  if (ext == ".dimacs" || ext == ".col") return InputFormat::kDimacs;
  return InputFormat::kEdgeList;
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    write_file(out, text);
  }
}

struct SolveArgs {
  std::string problem = "mis";
  std::string input;
  std::string format;
  std::string model;
  std::string output;
  double time_limit = 10.0;
  int threads = 1;
  std::uint64_t seed = 0;
  bool no_reduction = false;
  bool no_local_search = false;
  int maps = 0;
};

int run_solve(const SolveArgs& a) {
  const ProblemKind kind = parse_problem_kind(a.problem);
  const InputFormat format = a.format.empty() ? guess_format(a.input) : parse_input_format(a.format);
  const ProblemInstance instance =
      load_instance(kind, format, read_file(a.input), fs::path(a.input).filename().string());
  const GcnModel model = load_or_init_model(a.model, a.seed);

  SearchConfig config;
  config.time_budget_s = a.time_limit;
  config.threads = a.threads;
  config.seed = a.seed;
  config.maps = a.maps;
  config.reduction = !a.no_reduction;
  config.rekernelize = !a.no_reduction;
  config.local_search = !a.no_local_search;

  const SolutionReport report = solve_problem(instance, model, config);
  emit(write_solution(report, instance), a.output);
  return kind == ProblemKind::kSat && !report.solved ? kUnsolved : kOk;
}

struct TrainArgs {
  std::string data;
  std::string validation;
  std::string out;
  std::string history;
  int epochs = 200;
  double lr = 1e-4;
  int maps = kDefaultMaps;
  int layers = kDefaultLayers;
  int width = kDefaultWidth;
  int labels = 8;
  std::uint64_t seed = 0;
  bool binary = false;
};

int run_train(const TrainArgs& a) {
  const TrainingSet data = load_training_set(a.data, a.labels, a.seed);
  if (data.empty()) {
    std::cerr << "error: no satisfiable .cnf instances in " << a.data << "\n";
    return kUsage;
  }
  std::optional<TrainingSet> validation;
  if (!a.validation.empty()) validation = load_training_set(a.validation, a.labels, a.seed + 1);

  TrainConfig config{.epochs = a.epochs, .layers = a.layers, .width = a.width, .maps = a.maps, .seed = a.seed};
  config.adam.learning_rate = a.lr;

  const std::string history_path = a.history.empty() ? a.out + ".history.tsv" : a.history;
  std::string history = "epoch\ttrain_loss\tvalidation_loss\n";
  auto on_epoch = [&](const EpochStats& s) {
    char line[128];
    std::snprintf(line, sizeof line, "%d\t%.9g\t%.9g\n", s.epoch, s.train_loss, s.validation_loss);
    history += line;
    std::cerr << line;
  };
  TrainResult result;
  try {
    result = train(data, config, validation ? &*validation : nullptr, on_epoch);
  } catch (const DivergenceError& e) {
    write_file(history_path, history);
    std::cerr << "error: " << e.what() << "\n";
    return kDiverged;
  }
  auto& meta = result.model.metadata;
  auto put = [&](const char* key, auto value) {
    std::ostringstream s;
    s.precision(17);
    s << value;
    meta.emplace_back(key, s.str());
  };
  put("optimizer", "adam");
  put("lr", config.adam.learning_rate);
  put("beta1", config.adam.beta1);
  put("beta2", config.adam.beta2);
  put("adam_epsilon", config.adam.epsilon);
  put("epochs", config.epochs);
  put("seed", config.seed);
  put("labels_per_instance", a.labels);
  put("training_instances", data.size());
  write_file(a.out, write_model(result.model, a.binary ? ModelEncoding::kBinary : ModelEncoding::kText));
  write_file(history_path, history);
  return kOk;
}

struct GenArgs {
  int vars = 20;
  int clauses = 91;
  int count = 500;
  std::uint64_t seed = 0;
  std::string out;
};

int run_gen(const GenArgs& a) {
  fs::create_directories(a.out);
  const int digits = std::max<int>(5, static_cast<int>(std::to_string(a.count).size()));
  for (int i = 0; i < a.count; ++i) {
    // Per-instance seeds keep every file independent of --count.
    const auto planted = planted_3sat(a.vars, a.clauses, a.seed * 1'000'003ULL + static_cast<std::uint64_t>(i));
    if (!dpll_sat(planted.formula)) throw InternalError("generated formula failed DPLL verification");
    char stem[64];
    std::snprintf(stem, sizeof stem, "inst-%0*d", digits, i);
    const fs::path cnf = fs::path(a.out) / (std::string(stem) + ".cnf");
    write_file(cnf, write_cnf(planted.formula));
    write_file(assignment_path(cnf), write_assignment(planted.assignment));
  }
  return kOk;
}

struct BenchArgs {
  std::string data;
  std::string methods = "basic,basic+tree,full,full-parallel";
  std::string model;
  std::string out;
  std::vector<int> sweep_maps;
  double time_limit = 1.0;
  int threads = 4;
  std::uint64_t seed = 0;
};

int run_bench(const BenchArgs& a) {
  const auto methods = parse_method_list(a.methods);
  const auto instances = load_bench_dir(a.data);
  if (instances.empty()) {
    std::cerr << "error: no instances in " << a.data << "\n";
    return kUsage;
  }
  const GcnModel model = load_or_init_model(a.model, a.seed);
  std::vector<int> maps_values = a.sweep_maps.empty() ? std::vector<int>{0} : a.sweep_maps;
  std::vector<BenchmarkRecord> records;
  for (int maps : maps_values) {
    BenchOptions options{.time_limit_s = a.time_limit, .threads = a.threads, .seed = a.seed, .maps = maps};
    for (Method m : methods) {
      for (const auto& inst : instances) {
        records.push_back(run_method(inst, m, model, options));
      }
    }
  }
  const auto summary = summarize(records);
  emit(format_bench(records, summary), a.out);
  std::cerr << format_summary_table(summary);
  return kOk;
}

struct ConvertArgs {
  std::string input;
  std::string to = "edgelist";
  std::string output;
};

int run_convert(const ConvertArgs& a) {
  const SatMisMapping map = sat_to_mis(parse_cnf(read_file(a.input)));
  const InputFormat to = parse_input_format(a.to);
  if (to == InputFormat::kCnf) throw ParseError("convert writes graph formats only");
  emit(to == InputFormat::kDimacs ? write_dimacs_graph(map.graph) : write_edge_list(map.graph), a.output);
  return kOk;
}

struct OracleArgs {
  std::string mode = "mis";
  std::string input;
  std::string format;
  std::uint64_t node_limit = kDefaultOracleNodeLimit;
};

int run_oracle(const OracleArgs& a) {
  nlohmann::ordered_json doc;
  const std::string text = read_file(a.input);
  if (a.mode == "sat") {
    const CnfFormula f = parse_cnf(text);
    const auto assignment = dpll_sat(f);
    doc["satisfiable"] = assignment.has_value();
    if (assignment) {
      std::vector<Literal> lits;
      for (std::size_t v = 0; v < assignment->size(); ++v) {
        lits.push_back((*assignment)[v] ? static_cast<Literal>(v + 1) : -static_cast<Literal>(v + 1));
      }
      doc["assignment"] = lits;
    }
    std::cout << doc.dump(2) << "\n";
    return assignment ? kOk : kUnsolved;
  }
  if (a.mode != "mis") throw ParseError("oracle mode must be mis or sat");
  const InputFormat format = a.format.empty() ? guess_format(a.input) : parse_input_format(a.format);
  const Graph g = format == InputFormat::kCnf ? sat_to_mis(parse_cnf(text)).graph
                                              : load_instance(ProblemKind::kMis, format, text, "").graph;
  const OracleResult r = exact_mis(g, a.node_limit);
  doc["certified"] = r.certified();
  if (r.alpha) doc["alpha"] = *r.alpha;
  doc["witness"] = r.witness;
  doc["expansions"] = r.expansions;
  std::cout << doc.dump(2) << "\n";
  return r.certified() ? kOk : kUnsolved;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GCN-guided solver for maximum independent set and reducible problems"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Solve an MIS, MVC, MC or SAT instance");
  s->add_option("--problem", solve.problem, "mis, mvc, mc or sat")
      ->check(CLI::IsMember({"mis", "mvc", "mc", "sat"}));
  s->add_option("--input", solve.input, "Instance file")->required();
  s->add_option("--format", solve.format, "cnf, edgelist or dimacs (default: from extension)")
      ->check(CLI::IsMember({"cnf", "edgelist", "dimacs"}));
  s->add_option("--model", solve.model, "Model file (default: seeded random weights)");
  s->add_option("--output", solve.output, "Write the report here instead of stdout");
  s->add_option("--time-limit", solve.time_limit, "Seconds")->check(CLI::NonNegativeNumber);
  s->add_option("--threads", solve.threads)->check(CLI::PositiveNumber);
  s->add_option("--seed", solve.seed);
  s->add_flag("--no-reduction", solve.no_reduction);
  s->add_flag("--no-local-search", solve.no_local_search);
  s->add_option("--maps", solve.maps, "Maps per expansion (0 = all)")->check(CLI::NonNegativeNumber);

  TrainArgs tr;
  auto* t = app.add_subcommand("train", "Train a model on a directory of .cnf instances");
  t->add_option("--data", tr.data)->required();
  t->add_option("--validation", tr.validation, "Directory of held-out .cnf instances");
  t->add_option("--out", tr.out, "Model file")->required();
  t->add_option("--history", tr.history, "Loss history (default: <out>.history.tsv)");
  t->add_option("--epochs", tr.epochs)->check(CLI::NonNegativeNumber);
  t->add_option("--lr", tr.lr);
  t->add_option("--maps", tr.maps)->check(CLI::PositiveNumber);
  t->add_option("--layers", tr.layers)->check(CLI::PositiveNumber);
  t->add_option("--width", tr.width)->check(CLI::PositiveNumber);
  t->add_option("--labels-per-instance", tr.labels)->check(CLI::PositiveNumber);
  t->add_option("--seed", tr.seed);
  t->add_flag("--binary", tr.binary, "Binary weight encoding");

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate planted 3-SAT instances");
  g->add_option("--vars", gen.vars)->check(CLI::Range(3, 1 << 20));
  g->add_option("--clauses", gen.clauses)->check(CLI::NonNegativeNumber);
  g->add_option("--count", gen.count)->check(CLI::NonNegativeNumber);
  g->add_option("--seed", gen.seed);
  g->add_option("--out", gen.out, "Output directory")->required();

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Compare solver variants on a directory of instances");
  b->add_option("--data", bench.data)->required();
  b->add_option("--methods", bench.methods,
                "Comma-separated: classic, basic, basic+tree, no-local-search, no-reduction, full, full-parallel");
  b->add_option("--model", bench.model);
  b->add_option("--out", bench.out, "Write records here instead of stdout");
  b->add_option("--time-limit", bench.time_limit)->check(CLI::NonNegativeNumber);
  b->add_option("--threads", bench.threads, "Threads for full-parallel")->check(CLI::PositiveNumber);
  b->add_option("--seed", bench.seed);
  b->add_option("--sweep-maps", bench.sweep_maps, "Repeat the run for each map count")->delimiter(',');

  ConvertArgs conv;
  auto* c = app.add_subcommand("convert", "Write the MIS graph of a CNF formula");
  c->add_option("--input", conv.input)->required();
  c->add_option("--to", conv.to)->check(CLI::IsMember({"edgelist", "dimacs"}));
  c->add_option("--output", conv.output);

  OracleArgs orc;
  auto* o = app.add_subcommand("oracle", "Exact MIS or DPLL, for golden files");
  o->add_option("--mode", orc.mode)->check(CLI::IsMember({"mis", "sat"}));
  o->add_option("--input", orc.input)->required();
  o->add_option("--format", orc.format)->check(CLI::IsMember({"cnf", "edgelist", "dimacs"}));
  o->add_option("--node-limit", orc.node_limit);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n";
    const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    std::cerr << sub->help();
    return kUsage;
  }

  try {
    if (*s) return run_solve(solve);
    if (*t) return run_train(tr);
    if (*g) return run_gen(gen);
    if (*b) return run_bench(bench);
    if (*c) return run_convert(conv);
    if (*o) return run_oracle(orc);
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kResource;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
