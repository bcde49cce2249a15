#include "misgcn/oracle.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdlib>

#include "misgcn/error.hpp"

namespace misgcn {

namespace {

class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t n) : words_((n + 63) / 64, 0) {}

  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

  bool none() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
  }
  int count_and(const Bitset& other) const {
    int c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) c += std::popcount(words_[i] & other.words_[i]);
    return c;
  }
  /// Lowest set bit, or -1.
  long first() const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i]) return static_cast<long>(i * 64 + std::countr_zero(words_[i]));
    }
    return -1;
  }
  void and_with(const Bitset& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  }
  void and_not(const Bitset& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  }
  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      for (std::uint64_t w = words_[i]; w; w &= w - 1) f(static_cast<Vertex>(i * 64 + std::countr_zero(w)));
    }
  }

 private:
  std::vector<std::uint64_t> words_;
};

class BranchAndBound {
 public:
  BranchAndBound(const Graph& g, std::uint64_t limit) : g_(g), limit_(limit) {
    const auto n = static_cast<std::size_t>(g.num_vertices());
    closed_.assign(n, Bitset(n));
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      closed_[v].set(static_cast<std::size_t>(v));
      for (Vertex u : g.neighbors(v)) closed_[v].set(static_cast<std::size_t>(u));
    }
  }

  OracleResult run() {
    best_ = greedy_lower_bound();
    Bitset all(static_cast<std::size_t>(g_.num_vertices()));
    for (Vertex v = 0; v < g_.num_vertices(); ++v) all.set(static_cast<std::size_t>(v));
    std::vector<Vertex> current;
    search(all, current);
    OracleResult r;
    if (!aborted_) r.alpha = static_cast<int>(best_.size());
    std::sort(best_.begin(), best_.end());
    r.witness = best_;
    r.expansions = expansions_;
    return r;
  }

 private:
  int degree_in(Vertex v, const Bitset& p) const { return closed_[v].count_and(p) - 1; }

  std::vector<Vertex> greedy_lower_bound() const {
    std::vector<Vertex> order(static_cast<std::size_t>(g_.num_vertices()));
    for (Vertex v = 0; v < g_.num_vertices(); ++v) order[v] = v;
    std::stable_sort(order.begin(), order.end(),
                     [&](Vertex a, Vertex b) { return g_.degree(a) < g_.degree(b); });
    std::vector<char> blocked(order.size(), 0);
    std::vector<Vertex> out;
    for (Vertex v : order) {
      if (blocked[v]) continue;
      out.push_back(v);
      blocked[v] = 1;
      for (Vertex u : g_.neighbors(v)) blocked[u] = 1;
    }
    return out;
  }

  int clique_cover_bound(const Bitset& p) const {
    Bitset rest = p;
    int cliques = 0;
    for (long v = rest.first(); v >= 0; v = rest.first()) {
      rest.reset(static_cast<std::size_t>(v));
      Bitset candidates = rest;
      candidates.and_with(closed_[v]);
      for (long u = candidates.first(); u >= 0; u = candidates.first()) {
        rest.reset(static_cast<std::size_t>(u));
        candidates.reset(static_cast<std::size_t>(u));
        candidates.and_with(closed_[u]);
      }
      ++cliques;
    }
    return cliques;
  }

  void search(Bitset p, std::vector<Vertex>& current) {
    if (aborted_) return;
    if (++expansions_ > limit_) {
      aborted_ = true;
      return;
    }
    const std::size_t depth = current.size();
    // Vertices of degree <= 1 in the candidate set belong to some maximum set.
    bool changed = true;
    while (changed) {
      changed = false;
      p.for_each([&](Vertex v) {
        if (!changed && p.test(static_cast<std::size_t>(v)) && degree_in(v, p) <= 1) {
          current.push_back(v);
          p.and_not(closed_[v]);
          changed = true;
        }
      });
    }
    if (p.none()) {
      if (current.size() > best_.size()) best_ = current;
      current.resize(depth);
      return;
    }
    if (current.size() + static_cast<std::size_t>(clique_cover_bound(p)) <= best_.size()) {
      current.resize(depth);
      return;
    }
    Vertex pivot = -1;
    int pivot_degree = -1;
    p.for_each([&](Vertex v) {
      const int d = degree_in(v, p);
      if (d > pivot_degree) {
        pivot = v;
        pivot_degree = d;
      }
    });

    Bitset with = p;
    with.and_not(closed_[pivot]);
    current.push_back(pivot);
    search(with, current);
    current.pop_back();

    p.reset(static_cast<std::size_t>(pivot));
    search(p, current);
    current.resize(depth);
  }

  const Graph& g_;
  std::uint64_t limit_;
  std::vector<Bitset> closed_;  // N[v]
  std::vector<Vertex> best_;
  std::uint64_t expansions_ = 0;
  bool aborted_ = false;
};

enum class Value : signed char { kFalse = 0, kTrue = 1, kUnset = -1 };

bool dpll(const CnfFormula& f, std::vector<Value>& values) {
  // unit propagation
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& clause : f.clauses) {
      int unset = 0;
      Literal last = 0;
      bool sat = false;
      for (Literal lit : clause) {
        const Value v = values[std::abs(lit)];
        if (v == Value::kUnset) {
          ++unset;
          last = lit;
        } else if ((v == Value::kTrue) == (lit > 0)) {
          sat = true;
          break;
        }
      }
      if (sat) continue;
      if (unset == 0) return false;
      if (unset == 1) {
        values[std::abs(last)] = last > 0 ? Value::kTrue : Value::kFalse;
        changed = true;
      }
    }
  }
  // branch on a literal of the shortest open clause
  const Clause* shortest = nullptr;
  int shortest_len = 0;
  for (const auto& clause : f.clauses) {
    int unset = 0;
    bool sat = false;
    for (Literal lit : clause) {
      const Value v = values[std::abs(lit)];
      if (v == Value::kUnset) {
        ++unset;
      } else if ((v == Value::kTrue) == (lit > 0)) {
        sat = true;
        break;
      }
    }
    if (!sat && (shortest == nullptr || unset < shortest_len)) {
      shortest = &clause;
      shortest_len = unset;
    }
  }
  if (shortest == nullptr) return true;
  Literal pick = 0;
  for (Literal lit : *shortest) {
    if (values[std::abs(lit)] == Value::kUnset) {
      pick = lit;
      break;
    }
  }
  for (bool polarity : {pick > 0, pick < 0}) {
    std::vector<Value> trial = values;
    trial[std::abs(pick)] = polarity ? Value::kTrue : Value::kFalse;
    if (dpll(f, trial)) {
      values = std::move(trial);
      return true;
    }
  }
  return false;
}

}  // namespace

OracleResult exact_mis(const Graph& g, std::uint64_t node_limit) {
  const auto start = std::chrono::steady_clock::now();
  OracleResult r = BranchAndBound(g, node_limit).run();
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<Vertex> enumerate_mis(const Graph& g) {
  const Vertex n = g.num_vertices();
  if (n > 24) throw ResourceError("subset enumeration is limited to 24 vertices");
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(n), 0);
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex u : g.neighbors(v)) adj[v] |= 1u << u;
  }
  const std::uint32_t subsets = 1u << n;
  std::vector<char> independent(subsets, 0);
  independent[0] = 1;
  std::uint32_t best = 0;
  int best_size = 0;
  for (std::uint32_t mask = 1; mask < subsets; ++mask) {
    const int low = std::countr_zero(mask);
    const std::uint32_t rest = mask & (mask - 1);
    independent[mask] = independent[rest] && (adj[low] & rest) == 0;
    if (independent[mask] && std::popcount(mask) > best_size) {
      best = mask;
      best_size = std::popcount(mask);
    }
  }
  std::vector<Vertex> out;
  for (Vertex v = 0; v < n; ++v) {
    if (best >> v & 1) out.push_back(v);
  }
  return out;
}

std::optional<Assignment> dpll_sat(const CnfFormula& f) {
  std::vector<Value> values(static_cast<std::size_t>(f.num_vars) + 1, Value::kUnset);
  if (!dpll(f, values)) return std::nullopt;
  Assignment a(static_cast<std::size_t>(f.num_vars), false);
  for (int v = 1; v <= f.num_vars; ++v) a[v - 1] = values[v] == Value::kTrue;
  return a;
}

}  // namespace misgcn
