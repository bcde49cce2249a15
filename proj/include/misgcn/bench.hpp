#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "misgcn/gcn.hpp"
#include "misgcn/instance_io.hpp"
#include "misgcn/training.hpp"
#include "misgcn/tree_search.hpp"

namespace misgcn {

enum class Method { kClassic, kBasic, kBasicTree, kNoLocalSearch, kNoReduction, kFull, kFullParallel };

std::string_view to_string(Method m);
/// Throws ParseError on an unknown tag.
Method parse_method(std::string_view tag);
/// Comma-separated list of tags.
std::vector<Method> parse_method_list(std::string_view list);

struct BenchInstance {
  std::string id;
  ProblemInstance instance;
  /// Known optimum: the clause count for SAT, a certified alpha for graphs.
  std::optional<int> optimum;
};

/// Loads every *.cnf (SAT), *.edges / *.edgelist / *.txt (edge list) and
/// *.dimacs / *.col (DIMACS graph) file in dir, sorted by name. Graph
/// optima come from exact_mis when it finishes within oracle_node_limit.
std::vector<BenchInstance> load_bench_dir(const std::filesystem::path& dir,
                                          std::uint64_t oracle_node_limit = 2'000'000);

struct BenchOptions {
  double time_limit_s = 1.0;
  /// Threads for full-parallel; every other method runs single-threaded.
  int threads = 4;
  std::uint64_t seed = 0;
  /// Maps per expansion, 0 = all.
  int maps = 0;
  /// Stop a run as soon as the known optimum is reached.
  bool stop_at_optimum = true;
};

SearchConfig method_config(Method m, const BenchOptions& options);

struct BenchmarkRecord {
  std::string instance;
  std::string method;
  int maps = 0;
  bool solved = false;
  std::int64_t objective = 0;
  double wall_time_s = 0.0;
  std::uint64_t seed = 0;
  /// Non-empty when the run failed; such records count as unsolved.
  std::string error;
};

/// Runs one method on one instance and verifies the result. Exceptions are
/// caught and stored in the record.
BenchmarkRecord run_method(const BenchInstance& instance, Method m, const GcnModel& model,
                           const BenchOptions& options);

struct MethodSummary {
  std::string method;
  int maps = 0;
  int instances = 0;
  int solved = 0;
  double solved_pct = 0.0;
  double mean_objective = 0.0;
  double mean_time_s = 0.0;
  int failures = 0;
};

/// One row per (method, maps), in order of first appearance.
std::vector<MethodSummary> summarize(const std::vector<BenchmarkRecord>& records);

/// JSON document {"records": [...], "summary": [...]}.
std::string format_bench(const std::vector<BenchmarkRecord>& records, const std::vector<MethodSummary>& summary);

/// Plain-text summary table.
std::string format_summary_table(const std::vector<MethodSummary>& summary);

/// Assignment file that accompanies a generated formula: same stem,
/// extension ".sol".
std::filesystem::path assignment_path(const std::filesystem::path& cnf);

/// SAT graphs with k synthesized labels each, from the *.cnf files in dir.
/// Uses the accompanying assignment when present and DPLL otherwise;
/// unsatisfiable formulas are skipped.
TrainingSet load_training_set(const std::filesystem::path& dir, int labels_per_instance, std::uint64_t seed);

/// Same, from in-memory formulas and assignments.
TrainingSet make_training_set(const std::vector<CnfFormula>& formulas, const std::vector<Assignment>& assignments,
                              int labels_per_instance, std::uint64_t seed);

}  // namespace misgcn
