#include "misgcn/instance_io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "misgcn/error.hpp"

namespace misgcn {

namespace {

/// Splits text into lines and whitespace-separated tokens, tracking 1-based
/// line numbers.
class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  bool next(std::string_view& line) {
    if (pos_ >= text_.size()) return false;
    const auto end = text_.find('\n', pos_);
    const auto stop = end == std::string_view::npos ? text_.size() : end;
    line = text_.substr(pos_, stop - pos_);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos_ = stop + 1;
    ++line_no_;
    return true;
  }

  std::size_t line_no() const noexcept { return line_no_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_no_ = 0;
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; }

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_space(line[j])) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

template <typename Int>
Int parse_int(std::string_view token, std::size_t line) {
  Int value{};
  auto first = token.data();
  if (!token.empty() && token.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || first == ptr) {
    throw ParseError("expected an integer, got '" + std::string(token.substr(0, 32)) + "'", line);
  }
  return value;
}

double parse_double(std::string_view token, std::size_t line) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError("expected a number, got '" + std::string(token.substr(0, 32)) + "'", line);
  }
  return value;
}

void append_double(std::string& out, double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw InternalError("to_chars failed");
  out.append(buf, ptr);
}

}  // namespace

std::size_t CnfFormula::num_literals() const noexcept {
  std::size_t total = 0;
  for (const auto& c : clauses) total += c.size();
  return total;
}

bool satisfies(const CnfFormula& f, const Assignment& assignment) {
  if (static_cast<int>(assignment.size()) != f.num_vars) return false;
  for (const auto& clause : f.clauses) {
    const bool sat = std::any_of(clause.begin(), clause.end(), [&](Literal lit) {
      return assignment[std::abs(lit) - 1] == (lit > 0);
    });
    if (!sat) return false;
  }
  return true;
}

CnfFormula parse_cnf(std::string_view text) {
  LineReader reader(text);
  std::string_view line;
  CnfFormula f;
  bool have_header = false;
  long long declared = 0;
  Clause current;

  while (reader.next(line)) {
    const auto body = trim(line);
    if (body.empty() || body.front() == 'c') continue;
    if (body.front() == '%') break;
    const auto tokens = tokenize(body);
    if (tokens.front() == "p") {
      if (have_header) throw ParseError("duplicate problem line", reader.line_no());
      if (tokens.size() != 4 || tokens[1] != "cnf") {
        throw ParseError("expected 'p cnf <vars> <clauses>'", reader.line_no());
      }
      const auto vars = parse_int<long long>(tokens[2], reader.line_no());
      declared = parse_int<long long>(tokens[3], reader.line_no());
      if (vars < 0 || declared < 0 || vars > (1LL << 30)) {
        throw ParseError("header counts out of range", reader.line_no());
      }
      f.num_vars = static_cast<int>(vars);
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError("clause data before 'p cnf' header", reader.line_no());
    for (auto token : tokens) {
      const auto lit = parse_int<long long>(token, reader.line_no());
      if (lit == 0) {
        if (current.empty()) throw ParseError("empty clause", reader.line_no());
        Clause unique;
        for (Literal l : current) {
          if (std::find(unique.begin(), unique.end(), -l) != unique.end()) {
            throw ParseError("tautological clause contains both " + std::to_string(l) + " and " +
                                 std::to_string(-l),
                             reader.line_no());
          }
          if (std::find(unique.begin(), unique.end(), l) == unique.end()) unique.push_back(l);
        }
        current = std::move(unique);
        f.clauses.push_back(std::move(current));
        current.clear();
        if (static_cast<long long>(f.clauses.size()) > declared) {
          throw ParseError("more clauses than the declared " + std::to_string(declared),
                           reader.line_no());
        }
        continue;
      }
      if (lit < -f.num_vars || lit > f.num_vars) {
        throw ParseError("literal " + std::to_string(lit) + " outside [1, " +
                             std::to_string(f.num_vars) + "]",
                         reader.line_no());
      }
      current.push_back(static_cast<Literal>(lit));
    }
  }
  if (!have_header) throw ParseError("missing 'p cnf' header", reader.line_no());
  if (!current.empty()) throw ParseError("last clause is not terminated by 0", reader.line_no());
  if (static_cast<long long>(f.clauses.size()) != declared) {
    throw ParseError("header declares " + std::to_string(declared) + " clauses, found " +
                         std::to_string(f.clauses.size()),
                     reader.line_no());
  }
  return f;
}

std::string write_cnf(const CnfFormula& f) {
  std::string out = "p cnf " + std::to_string(f.num_vars) + " " + std::to_string(f.num_clauses()) + "\n";
  for (const auto& clause : f.clauses) {
    for (Literal l : clause) out += std::to_string(l) + " ";
    out += "0\n";
  }
  return out;
}

Assignment parse_assignment(std::string_view text, int num_vars) {
  LineReader reader(text);
  std::string_view line;
  Assignment assignment(static_cast<std::size_t>(num_vars), false);
  std::vector<char> seen(static_cast<std::size_t>(num_vars), 0);
  while (reader.next(line)) {
    const auto body = trim(line);
    if (body.empty() || body.front() == 'c') continue;
    for (auto token : tokenize(body)) {
      if (token == "v" || token == "s" || token == "SATISFIABLE") continue;
      const auto lit = parse_int<long long>(token, reader.line_no());
      if (lit == 0) continue;
      if (lit < -num_vars || lit > num_vars) {
        throw ParseError("literal " + std::to_string(lit) + " out of range", reader.line_no());
      }
      const auto var = static_cast<std::size_t>(std::llabs(lit) - 1);
      if (seen[var]) throw ParseError("variable assigned twice", reader.line_no());
      seen[var] = 1;
      assignment[var] = lit > 0;
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    throw ParseError("assignment does not cover every variable");
  }
  return assignment;
}

std::string write_assignment(const Assignment& assignment) {
  std::string out;
  for (std::size_t v = 0; v < assignment.size(); ++v) {
    out += (assignment[v] ? "" : "-") + std::to_string(v + 1) + "\n";
  }
  return out;
}

EdgeListGraph parse_edge_list(std::string_view text) {
  LineReader reader(text);
  std::string_view line;
  EdgeListGraph out;
  std::unordered_map<std::int64_t, Vertex> index;
  std::vector<Edge> edges;
  auto intern = [&](std::int64_t id) {
    auto [it, inserted] = index.try_emplace(id, static_cast<Vertex>(out.ids.size()));
    if (inserted) out.ids.push_back(id);
    return it->second;
  };
  while (reader.next(line)) {
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto tokens = tokenize(body);
    if (tokens.size() != 2) throw ParseError("expected two vertex ids", reader.line_no());
    const auto u = parse_int<std::int64_t>(tokens[0], reader.line_no());
    const auto v = parse_int<std::int64_t>(tokens[1], reader.line_no());
    if (u < 0 || v < 0) throw ParseError("vertex ids must be nonnegative", reader.line_no());
    const Vertex a = intern(u);
    const Vertex b = intern(v);
    edges.emplace_back(a, b);
  }
  out.graph = Graph::from_edges(edges, static_cast<Vertex>(out.ids.size()));
  return out;
}

std::string write_edge_list(const Graph& g) {
  std::string out = "# vertices " + std::to_string(g.num_vertices()) + " edges " +
                    std::to_string(g.num_edges()) + "\n";
  for (auto [u, v] : g.edge_list()) out += std::to_string(u) + " " + std::to_string(v) + "\n";
  return out;
}

Graph parse_dimacs_graph(std::string_view text) {
  LineReader reader(text);
  std::string_view line;
  long long n = -1;
  std::vector<Edge> edges;
  while (reader.next(line)) {
    const auto body = trim(line);
    if (body.empty() || body.front() == 'c') continue;
    const auto tokens = tokenize(body);
    if (tokens.front() == "p") {
      if (n >= 0) throw ParseError("duplicate problem line", reader.line_no());
      if (tokens.size() != 4 || (tokens[1] != "edge" && tokens[1] != "col")) {
        throw ParseError("expected 'p edge <n> <m>'", reader.line_no());
      }
      n = parse_int<long long>(tokens[2], reader.line_no());
      parse_int<long long>(tokens[3], reader.line_no());
      if (n < 0 || n > (1LL << 30)) throw ParseError("vertex count out of range", reader.line_no());
      continue;
    }
    if (tokens.front() != "e") throw ParseError("unknown line type", reader.line_no());
    if (n < 0) throw ParseError("edge before 'p edge' header", reader.line_no());
    if (tokens.size() != 3) throw ParseError("expected 'e <u> <v>'", reader.line_no());
    const auto u = parse_int<long long>(tokens[1], reader.line_no());
    const auto v = parse_int<long long>(tokens[2], reader.line_no());
    if (u < 1 || u > n || v < 1 || v > n) {
      throw ParseError("edge endpoint outside [1, " + std::to_string(n) + "]", reader.line_no());
    }
    edges.emplace_back(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
  }
  if (n < 0) throw ParseError("missing 'p edge' header", reader.line_no());
  return Graph::from_edges(edges, static_cast<Vertex>(n));
}

std::string write_dimacs_graph(const Graph& g) {
  std::string out = "p edge " + std::to_string(g.num_vertices()) + " " +
                    std::to_string(g.num_edges()) + "\n";
  for (auto [u, v] : g.edge_list()) {
    out += "e " + std::to_string(u + 1) + " " + std::to_string(v + 1) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Model files

std::string write_model(const GcnModel& model, ModelEncoding encoding) {
  model.validate();
  std::string out = "misgcn-model " + std::to_string(kModelFormatVersion) + "\n";
  out += encoding == ModelEncoding::kText ? "encoding text\n" : "encoding binary\n";
  out += "layers " + std::to_string(model.num_layers()) + "\n";
  out += "widths";
  for (int w : model.widths) out += " " + std::to_string(w);
  out += "\n";
  for (const auto& [key, value] : model.metadata) {
    if (key.empty() || key.find_first_of(" \t\r\n") != std::string::npos ||
        value.find_first_of("\r\n") != std::string::npos) {
      throw ContractViolation("model metadata must be single-line and keys must not contain spaces");
    }
    out += "meta " + key + " " + value + "\n";
  }
  out += "end\n";

  const int layers = model.num_layers();
  for (int l = 0; l < layers; ++l) {
    for (int kind = 0; kind < 2; ++kind) {
      const Matrix& w = kind == 0 ? model.self_weights[l] : model.neighbor_weights[l];
      if (encoding == ModelEncoding::kText) {
        out += (kind == 0 ? "W0 " : "W1 ") + std::to_string(l) + " " + std::to_string(w.rows()) +
               " " + std::to_string(w.cols()) + "\n";
        for (Eigen::Index r = 0; r < w.rows(); ++r) {
          for (Eigen::Index c = 0; c < w.cols(); ++c) {
            if (c > 0) out += ' ';
            append_double(out, w(r, c));
          }
          out += '\n';
        }
      } else {
        for (Eigen::Index i = 0; i < w.size(); ++i) {
          auto bits = std::bit_cast<std::uint64_t>(w.data()[i]);
          for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((bits >> (8 * b)) & 0xff));
        }
      }
    }
  }
  return out;
}

GcnModel read_model(std::string_view bytes) {
  LineReader reader(bytes);
  std::string_view line;
  auto expect_line = [&](const char* what) {
    if (!reader.next(line)) throw ParseError(std::string("truncated model: missing ") + what, reader.line_no());
    return tokenize(line);
  };

  auto tokens = expect_line("magic");
  if (tokens.size() != 2 || tokens[0] != "misgcn-model") throw ParseError("not a model file", 1);
  const int version = parse_int<int>(tokens[1], 1);
  if (version != kModelFormatVersion) {
    throw ParseError("unsupported model format version " + std::to_string(version), 1);
  }
  tokens = expect_line("encoding");
  if (tokens.size() != 2 || tokens[0] != "encoding" || (tokens[1] != "text" && tokens[1] != "binary")) {
    throw ParseError("expected 'encoding text|binary'", reader.line_no());
  }
  const bool binary = tokens[1] == "binary";
  tokens = expect_line("layers");
  if (tokens.size() != 2 || tokens[0] != "layers") throw ParseError("expected 'layers L'", reader.line_no());
  const int layers = parse_int<int>(tokens[1], reader.line_no());
  if (layers < 1 || layers > 100000) throw ParseError("layer count out of range", reader.line_no());
  tokens = expect_line("widths");
  if (tokens.empty() || tokens[0] != "widths") throw ParseError("expected 'widths ...'", reader.line_no());
  if (tokens.size() != static_cast<std::size_t>(layers) + 2) {
    throw ParseError("header declares " + std::to_string(layers) + " layers but lists " +
                         std::to_string(tokens.size() - 1) + " widths",
                     reader.line_no());
  }
  std::vector<int> widths;
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    const int w = parse_int<int>(tokens[i], reader.line_no());
    if (w <= 0 || w > (1 << 20)) throw ParseError("width out of range", reader.line_no());
    widths.push_back(w);
  }
  GcnModel model = zero_model(widths);
  while (true) {
    if (!reader.next(line)) throw ParseError("truncated model: missing 'end'", reader.line_no());
    if (line == "end") break;
    if (line.substr(0, 5) != "meta ") throw ParseError("unexpected header line", reader.line_no());
    const auto rest = line.substr(5);
    const auto space = rest.find(' ');
    if (space == std::string_view::npos || space == 0) throw ParseError("malformed meta line", reader.line_no());
    model.metadata.emplace_back(std::string(rest.substr(0, space)), std::string(rest.substr(space + 1)));
  }

  if (binary) {
    const auto header_end = bytes.find("\nend\n");
    std::string_view payload = bytes.substr(header_end + 5);
    std::size_t expected = 0;
    for (int l = 0; l < layers; ++l) expected += 2 * static_cast<std::size_t>(widths[l]) * widths[l + 1];
    if (payload.size() != expected * 8) {
      throw ParseError("binary payload has " + std::to_string(payload.size()) + " bytes, expected " +
                       std::to_string(expected * 8));
    }
    std::size_t offset = 0;
    for (int l = 0; l < layers; ++l) {
      for (Matrix* w : {&model.self_weights[l], &model.neighbor_weights[l]}) {
        for (Eigen::Index i = 0; i < w->size(); ++i) {
          std::uint64_t bits = 0;
          for (int b = 0; b < 8; ++b) {
            bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(payload[offset + b])) << (8 * b);
          }
          offset += 8;
          w->data()[i] = std::bit_cast<double>(bits);
        }
      }
    }
    return model;
  }

  for (int l = 0; l < layers; ++l) {
    for (int kind = 0; kind < 2; ++kind) {
      Matrix& w = kind == 0 ? model.self_weights[l] : model.neighbor_weights[l];
      tokens = expect_line("weight block");
      if (tokens.size() != 4 || tokens[0] != (kind == 0 ? "W0" : "W1") ||
          parse_int<int>(tokens[1], reader.line_no()) != l) {
        throw ParseError("expected block header '" + std::string(kind == 0 ? "W0 " : "W1 ") +
                             std::to_string(l) + " rows cols'",
                         reader.line_no());
      }
      if (parse_int<long long>(tokens[2], reader.line_no()) != w.rows() ||
          parse_int<long long>(tokens[3], reader.line_no()) != w.cols()) {
        throw ParseError("weight block dimensions do not match widths", reader.line_no());
      }
      for (Eigen::Index r = 0; r < w.rows(); ++r) {
        tokens = expect_line("weight row");
        if (static_cast<Eigen::Index>(tokens.size()) != w.cols()) {
          throw ParseError("weight row has " + std::to_string(tokens.size()) + " values, expected " +
                               std::to_string(w.cols()),
                           reader.line_no());
        }
        for (Eigen::Index c = 0; c < w.cols(); ++c) w(r, c) = parse_double(tokens[c], reader.line_no());
      }
    }
  }
  while (reader.next(line)) {
    if (!trim(line).empty()) throw ParseError("trailing data after last weight block", reader.line_no());
  }
  return model;
}

// ---------------------------------------------------------------------------
// Solution reports

std::string_view to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::kMis: return "mis";
    case ProblemKind::kMvc: return "mvc";
    case ProblemKind::kMc: return "mc";
    case ProblemKind::kSat: return "sat";
  }
  return "unknown";
}

ProblemKind parse_problem_kind(std::string_view name) {
  if (name == "mis") return ProblemKind::kMis;
  if (name == "mvc") return ProblemKind::kMvc;
  if (name == "mc") return ProblemKind::kMc;
  if (name == "sat") return ProblemKind::kSat;
  throw ParseError("unknown problem kind '" + std::string(name) + "'");
}

std::optional<std::string> verify_report(const SolutionReport& report,
                                         const ProblemInstance& instance) {
  if (report.kind != instance.kind) return "problem kind differs from the instance";
  const Graph& g = instance.graph;
  for (Vertex v : report.vertices) {
    if (v < 0 || v >= g.num_vertices()) return "vertex index out of range";
  }
  std::vector<Vertex> sorted = report.vertices;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return "duplicate vertex";
  if (static_cast<std::int64_t>(sorted.size()) != report.objective) {
    return "objective does not match the solution size";
  }
  switch (report.kind) {
    case ProblemKind::kMis:
      if (!is_independent_set(g, sorted)) return "vertex set is not independent";
      break;
    case ProblemKind::kMvc:
      if (!is_vertex_cover(g, sorted)) return "vertex set is not a cover";
      break;
    case ProblemKind::kMc:
      if (!is_clique(g, sorted)) return "vertex set is not a clique";
      break;
    case ProblemKind::kSat: {
      if (!instance.cnf) return "SAT instance without a formula";
      if (!is_independent_set(g, sorted)) return "vertex set is not independent in the SAT graph";
      if (report.objective > instance.cnf->num_clauses()) return "objective exceeds clause count";
      if (report.solved) {
        if (!report.assignment) return "solved report without an assignment";
        if (!satisfies(*instance.cnf, *report.assignment)) return "assignment does not satisfy the formula";
      } else if (report.assignment) {
        return "unsolved report carries an assignment";
      }
      break;
    }
  }
  if (report.kind != ProblemKind::kSat && (report.solved || report.assignment)) {
    return "only SAT reports carry solved/assignment";
  }
  return std::nullopt;
}

std::string write_solution(const SolutionReport& report, const ProblemInstance& instance) {
  if (auto why = verify_report(report, instance)) {
    throw ContractViolation("refusing to write an unverified solution: " + *why);
  }
  nlohmann::ordered_json doc;
  doc["problem"] = std::string(to_string(report.kind));
  doc["instance"] = report.instance_id;
  doc["objective"] = report.objective;
  if (report.kind == ProblemKind::kSat) doc["solved"] = report.solved;
  doc["vertices"] = report.vertices;
  if (!instance.vertex_ids.empty() && report.kind != ProblemKind::kSat) {
    std::vector<std::int64_t> ids;
    for (Vertex v : report.vertices) ids.push_back(instance.vertex_ids[v]);
    doc["vertex_ids"] = ids;
  }
  if (report.assignment) {
    std::vector<Literal> lits;
    for (std::size_t v = 0; v < report.assignment->size(); ++v) {
      const auto var = static_cast<Literal>(v + 1);
      lits.push_back((*report.assignment)[v] ? var : -var);
    }
    doc["assignment"] = lits;
  }
  doc["wall_time_s"] = report.wall_time_s;
  doc["seed"] = report.seed;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  for (const auto& [k, v] : report.config) config[k] = v;
  doc["config"] = config;
  return doc.dump(2) + "\n";
}

SolutionReport read_solution(std::string_view text) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(text);
    SolutionReport report;
    report.kind = parse_problem_kind(doc.at("problem").get<std::string>());
    report.instance_id = doc.at("instance").get<std::string>();
    report.objective = doc.at("objective").get<std::int64_t>();
    if (doc.contains("solved")) report.solved = doc["solved"].get<bool>();
    report.vertices = doc.at("vertices").get<std::vector<Vertex>>();
    if (doc.contains("assignment")) {
      const auto lits = doc["assignment"].get<std::vector<Literal>>();
      Assignment a(lits.size(), false);
      for (std::size_t i = 0; i < lits.size(); ++i) {
        const auto var = static_cast<std::size_t>(std::abs(lits[i]));
        if (var == 0 || var > lits.size()) throw ParseError("assignment literal out of range");
        a[var - 1] = lits[i] > 0;
      }
      report.assignment = std::move(a);
    }
    report.wall_time_s = doc.at("wall_time_s").get<double>();
    report.seed = doc.at("seed").get<std::uint64_t>();
    for (const auto& [k, v] : doc.at("config").items()) report.config.emplace_back(k, v.get<std::string>());
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed solution report: ") + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace misgcn
