#include "misgcn/local_search.hpp"

#include <deque>

#include "misgcn/error.hpp"

namespace misgcn {

namespace {

/// Solution membership plus per-vertex count of solution neighbors, with a
/// FIFO of solution vertices whose neighborhood changed.
class TightnessIndex {
 public:
  explicit TightnessIndex(const Graph& g)
      : g_(g),
        in_(static_cast<std::size_t>(g.num_vertices()), 0),
        tight_(static_cast<std::size_t>(g.num_vertices()), 0),
        queued_(static_cast<std::size_t>(g.num_vertices()), 0) {}

  bool in(Vertex v) const { return in_[v] != 0; }
  int tightness(Vertex v) const { return tight_[v]; }

  void insert(Vertex v) {
    in_[v] = 1;
    enqueue(v);
    for (Vertex u : g_.neighbors(v)) {
      ++tight_[u];
      touched(u);
    }
  }

  void erase(Vertex v) {
    in_[v] = 0;
    for (Vertex u : g_.neighbors(v)) {
      --tight_[u];
      touched(u);
    }
  }

  void enqueue(Vertex v) {
    if (in_[v] && !queued_[v]) {
      queued_[v] = 1;
      queue_.push_back(v);
    }
  }

  bool pop(Vertex& v) {
    while (!queue_.empty()) {
      v = queue_.front();
      queue_.pop_front();
      queued_[v] = 0;
      if (in_[v]) return true;
    }
    return false;
  }

  void audit() const {
    for (Vertex v = 0; v < g_.num_vertices(); ++v) {
      int count = 0;
      for (Vertex u : g_.neighbors(v)) count += in_[u];
      if (count != tight_[v]) throw InternalError("tightness index out of sync");
      if (in_[v] && count != 0) throw InternalError("local search produced a dependent set");
    }
  }

  std::vector<Vertex> solution() const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < g_.num_vertices(); ++v) {
      if (in_[v]) out.push_back(v);
    }
    return out;
  }

 private:
  // A tightness change at u can create or destroy moves around u's solution
  // neighbors.
  void touched(Vertex u) {
    for (Vertex w : g_.neighbors(u)) enqueue(w);
  }

  const Graph& g_;
  std::vector<char> in_;
  std::vector<int> tight_;
  std::vector<char> queued_;
  std::deque<Vertex> queue_;
};

}  // namespace

std::vector<Vertex> two_improve(const Graph& g, std::span<const Vertex> s,
                                const LocalSearchOptions& options, LocalSearchStats* stats) {
  if (!is_independent_set(g, s)) throw ContractViolation("local search needs an independent set");
  const Vertex n = g.num_vertices();
  TightnessIndex index(g);
  LocalSearchStats local;

  std::vector<char> initial(static_cast<std::size_t>(n), 0);
  for (Vertex v : s) initial[v] = 1;
  for (Vertex v = 0; v < n; ++v) {
    if (initial[v]) index.insert(v);
  }
  auto free_insertions = [&](auto&& vertices) {
    for (Vertex v : vertices) {
      if (!index.in(v) && index.tightness(v) == 0) {
        index.insert(v);
        ++local.insertions;
      }
    }
  };
  std::vector<Vertex> all(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) all[v] = v;
  free_insertions(all);
  if (options.audit) index.audit();

  std::vector<Vertex> candidates;
  std::vector<char> mark(static_cast<std::size_t>(n), 0);
  Vertex v = 0;
  while (index.pop(v)) {
    candidates.clear();
    for (Vertex u : g.neighbors(v)) {
      if (index.tightness(u) == 1) candidates.push_back(u);
    }
    if (candidates.size() < 2) continue;

    // First candidate x that has a non-adjacent partner y among the rest.
    Vertex x = -1;
    Vertex y = -1;
    for (Vertex c : candidates) mark[c] = 1;
    for (std::size_t i = 0; i < candidates.size() && x < 0; ++i) {
      const Vertex a = candidates[i];
      int adjacent = 0;
      for (Vertex b : g.neighbors(a)) adjacent += mark[b];
      if (adjacent + 1 == static_cast<int>(candidates.size())) continue;
      mark[a] = 2;
      for (Vertex b : g.neighbors(a)) {
        if (mark[b] == 1) mark[b] = 3;
      }
      for (Vertex b : candidates) {
        if (mark[b] == 1) {
          x = a;
          y = b;
          break;
        }
      }
      for (Vertex b : g.neighbors(a)) {
        if (mark[b] == 3) mark[b] = 1;
      }
      mark[a] = 1;
    }
    for (Vertex c : candidates) mark[c] = 0;
    if (x < 0) continue;

    index.erase(v);
    index.insert(x);
    index.insert(y);
    ++local.swaps;
    // Other neighbors of v may have become free.
    free_insertions(g.neighbors(v));
    if (options.audit) index.audit();
  }
  free_insertions(all);
  if (options.audit) index.audit();
  if (stats) *stats = local;
  return index.solution();
}

bool verify_local_optimum(const Graph& g, std::span<const Vertex> s) {
  const Vertex n = g.num_vertices();
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  for (Vertex v : s) in[v] = 1;
  std::vector<int> tight(static_cast<std::size_t>(n), 0);
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex u : g.neighbors(v)) tight[v] += in[u];
  }
  for (Vertex v = 0; v < n; ++v) {
    if (!in[v] && tight[v] == 0) return false;
  }
  for (Vertex v = 0; v < n; ++v) {
    if (!in[v]) continue;
    const auto nb = g.neighbors(v);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (tight[nb[i]] != 1) continue;
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        if (tight[nb[j]] == 1 && !g.has_edge(nb[i], nb[j])) return false;
      }
    }
  }
  return true;
}

}  // namespace misgcn
