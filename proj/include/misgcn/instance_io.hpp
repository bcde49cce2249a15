#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "misgcn/gcn.hpp"
#include "misgcn/graph.hpp"

namespace misgcn {

using Literal = std::int32_t;
using Clause = std::vector<Literal>;

/// CNF formula. Literal +v / -v refers to variable v in [1, num_vars].
struct CnfFormula {
  int num_vars = 0;
  std::vector<Clause> clauses;

  int num_clauses() const noexcept { return static_cast<int>(clauses.size()); }
  std::size_t num_literals() const noexcept;

  bool operator==(const CnfFormula&) const = default;
};

/// assignment[v - 1] is the truth value of variable v.
using Assignment = std::vector<bool>;

bool satisfies(const CnfFormula& f, const Assignment& assignment);

/// DIMACS CNF. Comments start with 'c'; a line starting with '%' ends the
/// clause section (SATLIB convention). Duplicate literals inside a clause are
/// merged; tautological clauses, empty clauses, out-of-range literals and
/// clause-count mismatches are ParseErrors.
CnfFormula parse_cnf(std::string_view text);
std::string write_cnf(const CnfFormula& f);

/// Assignment file: one nonzero signed literal per line (a trailing "0" or
/// "v" prefixes are tolerated). Every variable must appear exactly once.
Assignment parse_assignment(std::string_view text, int num_vars);
std::string write_assignment(const Assignment& assignment);

struct EdgeListGraph {
  Graph graph;
  /// dense index -> id as it appeared in the file.
  std::vector<std::int64_t> ids;
};

/// SNAP-style whitespace separated edge list with '#' comments. Ids are
/// compacted in order of first appearance; edges are undirected.
EdgeListGraph parse_edge_list(std::string_view text);
std::string write_edge_list(const Graph& g);

/// DIMACS graph: "p edge n m" header, "e u v" lines with 1-based ids.
Graph parse_dimacs_graph(std::string_view text);
std::string write_dimacs_graph(const Graph& g);

enum class ModelEncoding { kText, kBinary };

inline constexpr int kModelFormatVersion = 1;

/// Versioned header followed by W0^0, W1^0, ..., W0^{L-1}, W1^{L-1} in
/// row-major order. Both encodings round-trip bit-exactly.
std::string write_model(const GcnModel& model, ModelEncoding encoding = ModelEncoding::kText);
GcnModel read_model(std::string_view bytes);

enum class ProblemKind { kMis, kMvc, kMc, kSat };

std::string_view to_string(ProblemKind kind);
ProblemKind parse_problem_kind(std::string_view name);

/// What the verifier needs to check a report.
struct ProblemInstance {
  ProblemKind kind = ProblemKind::kMis;
  std::string id;
  /// Input graph (MIS/MVC/MC) or the SAT-to-MIS graph (SAT).
  Graph graph;
  std::optional<CnfFormula> cnf;
  /// Original ids of graph vertices when loaded from an edge list.
  std::vector<std::int64_t> vertex_ids;
};

struct SolutionReport {
  ProblemKind kind = ProblemKind::kMis;
  std::string instance_id;
  /// MIS/MC: set size. MVC: cover size. SAT: independent set size in the
  /// SAT graph (equals the clause count when solved).
  std::int64_t objective = 0;
  /// Only meaningful for SAT.
  bool solved = false;
  /// Solution vertex set (dense indices). For SAT, the independent set in
  /// the SAT graph.
  std::vector<Vertex> vertices;
  /// Full assignment, present for solved SAT reports.
  std::optional<Assignment> assignment;
  double wall_time_s = 0.0;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> config;

  bool operator==(const SolutionReport&) const = default;
};

/// Checks the report against the instance. Returns an explanation on
/// failure, std::nullopt when the report is valid.
std::optional<std::string> verify_report(const SolutionReport& report,
                                         const ProblemInstance& instance);

/// JSON document with a stable key order. Throws ContractViolation when
/// the report does not verify against the instance.
std::string write_solution(const SolutionReport& report, const ProblemInstance& instance);
SolutionReport read_solution(std::string_view text);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

}  // namespace misgcn
