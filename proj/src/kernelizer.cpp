#include "misgcn/kernelizer.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "misgcn/error.hpp"

namespace misgcn {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void erase_sorted(std::vector<Vertex>& list, Vertex v) {
  auto it = std::lower_bound(list.begin(), list.end(), v);
  if (it != list.end() && *it == v) list.erase(it);
}

/// Scratch state for the confinement search, reused across calls.
struct ConfinementScratch {
  std::vector<char> in_s;
  std::vector<int> count;  // |N(x) ∩ S|
  std::vector<Vertex> touched;
  std::vector<Vertex> frontier;  // vertices with count > 0, not in S

  void ensure(std::size_t n) {
    if (in_s.size() < n) {
      in_s.resize(n, 0);
      count.resize(n, 0);
    }
  }
  void reset() {
    for (Vertex x : touched) {
      in_s[x] = 0;
      count[x] = 0;
    }
    touched.clear();
    frontier.clear();
  }
};

thread_local ConfinementScratch scratch;

}  // namespace

int event_offset(const ReductionEvent& event) {
  return std::visit(Overloaded{
                        [](const IsolatedEvent&) { return 1; },
                        [](const PendantEvent&) { return 1; },
                        [](const FoldEvent&) { return 1; },
                        [](const UnconfinedEvent&) { return 0; },
                        [](const TwinEvent&) { return 2; },
                    },
                    event);
}

ReducibleGraph::ReducibleGraph(const Graph& g)
    : input_vertices_(g.num_vertices()),
      alive_count_(g.num_vertices()),
      adj_(static_cast<std::size_t>(g.num_vertices())),
      alive_(static_cast<std::size_t>(g.num_vertices()), 1) {
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    auto nb = g.neighbors(v);
    adj_[v].assign(nb.begin(), nb.end());
  }
}

bool ReducibleGraph::has_edge(Vertex u, Vertex v) const noexcept {
  const auto& list = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
  const Vertex other = adj_[u].size() <= adj_[v].size() ? v : u;
  return std::binary_search(list.begin(), list.end(), other);
}

void ReducibleGraph::require_alive(Vertex v, const char* rule) const {
  if (v < 0 || v >= capacity() || !alive_[v]) {
    throw ContractViolation(std::string(rule) + ": vertex " + std::to_string(v) + " is not in the graph");
  }
}

void ReducibleGraph::remove_vertex(Vertex v) {
  for (Vertex u : adj_[v]) erase_sorted(adj_[u], v);
  adj_[v].clear();
  alive_[v] = 0;
  --alive_count_;
}

Vertex ReducibleGraph::add_vertex(std::vector<Vertex> neighbors) {
  const auto id = capacity();
  for (Vertex u : neighbors) adj_[u].push_back(id);  // id is the largest, order kept
  adj_.push_back(std::move(neighbors));
  alive_.push_back(1);
  ++alive_count_;
  return id;
}

bool ReducibleGraph::is_isolated(Vertex v) const { return alive_[v] && adj_[v].empty(); }

bool ReducibleGraph::is_pendant(Vertex v) const { return alive_[v] && adj_[v].size() == 1; }

bool ReducibleGraph::is_foldable(Vertex v) const {
  return alive_[v] && adj_[v].size() == 2 && !has_edge(adj_[v][0], adj_[v][1]);
}

bool ReducibleGraph::is_unconfined(Vertex v) const {
  if (!alive_[v]) return false;
  auto& s = scratch;
  s.ensure(adj_.size());
  s.reset();

  auto add_to_s = [&](Vertex x) {
    s.in_s[x] = 1;
    s.touched.push_back(x);
    for (Vertex y : adj_[x]) {
      if (s.count[y]++ == 0) {
        s.touched.push_back(y);
        s.frontier.push_back(y);
      }
    }
  };
  add_to_s(v);

  bool result = false;
  while (true) {
    Vertex best = -1;
    int best_outside = std::numeric_limits<int>::max();
    Vertex best_w = -1;
    for (Vertex u : s.frontier) {
      if (s.in_s[u] || s.count[u] != 1) continue;
      int outside = 0;
      Vertex w = -1;
      for (Vertex y : adj_[u]) {
        if (!s.in_s[y] && s.count[y] == 0) {
          ++outside;
          w = y;
          if (outside > best_outside) break;
        }
      }
      if (outside < best_outside || (outside == best_outside && u < best)) {
        best = u;
        best_outside = outside;
        best_w = w;
      }
    }
    if (best < 0) break;  // confined
    if (best_outside == 0) {
      result = true;
      break;
    }
    if (best_outside > 1) break;
    add_to_s(best_w);
  }
  s.reset();
  return result;
}

std::optional<Vertex> ReducibleGraph::find_twin(Vertex u) const {
  if (!alive_[u] || adj_[u].size() != 3) return std::nullopt;
  std::optional<Vertex> best;
  for (Vertex v : adj_[adj_[u][0]]) {
    if (v != u && adj_[v] == adj_[u] && (!best || v < *best)) best = v;
  }
  return best;
}

IsolatedEvent ReducibleGraph::apply_isolated(Vertex v) {
  require_alive(v, "isolated");
  if (!is_isolated(v)) throw ContractViolation("isolated: vertex has neighbors");
  remove_vertex(v);
  return {v};
}

PendantEvent ReducibleGraph::apply_pendant(Vertex v) {
  require_alive(v, "pendant");
  if (!is_pendant(v)) throw ContractViolation("pendant: vertex degree is not 1");
  const Vertex neighbor = adj_[v][0];
  remove_vertex(v);
  remove_vertex(neighbor);
  return {v, neighbor};
}

FoldEvent ReducibleGraph::apply_fold(Vertex v) {
  require_alive(v, "fold");
  if (!is_foldable(v)) throw ContractViolation("fold: vertex is not degree 2 with non-adjacent neighbors");
  const Vertex u = adj_[v][0];
  const Vertex w = adj_[v][1];
  std::vector<Vertex> merged_nb;
  std::set_union(adj_[u].begin(), adj_[u].end(), adj_[w].begin(), adj_[w].end(),
                 std::back_inserter(merged_nb));
  erase_sorted(merged_nb, v);
  remove_vertex(u);
  remove_vertex(v);
  remove_vertex(w);
  const Vertex merged = add_vertex(std::move(merged_nb));
  return {u, v, w, merged};
}

UnconfinedEvent ReducibleGraph::apply_unconfined(Vertex v) {
  require_alive(v, "unconfined");
  if (!is_unconfined(v)) throw ContractViolation("unconfined: vertex is confined");
  remove_vertex(v);
  return {v};
}

TwinEvent ReducibleGraph::apply_twin(Vertex u, Vertex v) {
  require_alive(u, "twin");
  require_alive(v, "twin");
  if (u == v || adj_[u].size() != 3 || adj_[u] != adj_[v]) {
    throw ContractViolation("twin: vertices are not degree-3 twins");
  }
  TwinEvent event{u, v, {adj_[u][0], adj_[u][1], adj_[u][2]}, std::nullopt};
  const auto& nb = event.neighborhood;
  const bool has_edges = has_edge(nb[0], nb[1]) || has_edge(nb[0], nb[2]) || has_edge(nb[1], nb[2]);

  std::vector<Vertex> order2;
  if (!has_edges) {
    for (Vertex x : nb) {
      for (Vertex y : adj_[x]) {
        if (y != u && y != v && y != nb[0] && y != nb[1] && y != nb[2]) order2.push_back(y);
      }
    }
    std::sort(order2.begin(), order2.end());
    order2.erase(std::unique(order2.begin(), order2.end()), order2.end());
  }
  remove_vertex(u);
  remove_vertex(v);
  for (Vertex x : nb) remove_vertex(x);
  if (!has_edges) event.gadget = add_vertex(std::move(order2));
  return event;
}

std::pair<Graph, std::vector<Vertex>> ReducibleGraph::compact() const {
  std::vector<Vertex> to_working;
  std::vector<Vertex> index(adj_.size(), -1);
  for (Vertex v = 0; v < capacity(); ++v) {
    if (alive_[v]) {
      index[v] = static_cast<Vertex>(to_working.size());
      to_working.push_back(v);
    }
  }
  std::vector<Edge> edges;
  for (Vertex v : to_working) {
    for (Vertex u : adj_[v]) {
      if (v < u) edges.emplace_back(index[v], index[u]);
    }
  }
  return {Graph::from_edges(edges, static_cast<Vertex>(to_working.size())), std::move(to_working)};
}

Kernelization finish_kernelization(const ReducibleGraph& rg, std::vector<ReductionEvent> events) {
  Kernelization k;
  auto [kernel, map] = rg.compact();
  k.kernel = std::move(kernel);
  k.trace.input_vertices = rg.input_vertices();
  k.trace.working_vertices = rg.capacity();
  k.trace.kernel_to_working = std::move(map);
  for (const auto& e : events) k.trace.offset += event_offset(e);
  k.trace.events = std::move(events);
  return k;
}

Kernelization identity_kernelization(const Graph& g) {
  Kernelization k;
  k.kernel = g;
  k.trace.input_vertices = g.num_vertices();
  k.trace.working_vertices = g.num_vertices();
  k.trace.kernel_to_working.resize(static_cast<std::size_t>(g.num_vertices()));
  for (Vertex v = 0; v < g.num_vertices(); ++v) k.trace.kernel_to_working[v] = v;
  return k;
}

Kernelization reduce(const Graph& g) {
  ReducibleGraph rg(g);
  std::vector<ReductionEvent> events;

  auto scan = [&](auto&& applies, auto&& apply) {
    for (Vertex v = 0; v < rg.capacity(); ++v) {
      if (rg.alive(v) && applies(v)) {
        events.emplace_back(apply(v));
        return true;
      }
    }
    return false;
  };

  while (rg.num_alive() > 0) {
    if (scan([&](Vertex v) { return rg.is_isolated(v); }, [&](Vertex v) { return rg.apply_isolated(v); })) continue;
    if (scan([&](Vertex v) { return rg.is_pendant(v); }, [&](Vertex v) { return rg.apply_pendant(v); })) continue;
    if (scan([&](Vertex v) { return rg.is_foldable(v); }, [&](Vertex v) { return rg.apply_fold(v); })) continue;
    if (scan([&](Vertex v) { return rg.is_unconfined(v); }, [&](Vertex v) { return rg.apply_unconfined(v); })) continue;
    if (scan([&](Vertex v) { return rg.find_twin(v).has_value(); },
             [&](Vertex v) { return rg.apply_twin(v, *rg.find_twin(v)); })) {
      continue;
    }
    break;
  }
  return finish_kernelization(rg, std::move(events));
}

std::vector<Vertex> lift(const Kernelization& k, std::span<const Vertex> kernel_solution) {
  if (!is_independent_set(k.kernel, kernel_solution)) {
    throw ContractViolation("kernel solution is not independent");
  }
  const auto& trace = k.trace;
  std::vector<char> in(static_cast<std::size_t>(trace.working_vertices), 0);
  for (Vertex v : kernel_solution) in[trace.kernel_to_working[v]] = 1;

  for (auto it = trace.events.rbegin(); it != trace.events.rend(); ++it) {
    std::visit(Overloaded{
                   [&](const IsolatedEvent& e) { in[e.v] = 1; },
                   [&](const PendantEvent& e) {
                     in[e.v] = 1;
                     in[e.neighbor] = 0;
                   },
                   [&](const FoldEvent& e) {
                     const bool take_pair = in[e.merged];
                     in[e.u] = in[e.w] = take_pair;
                     in[e.v] = !take_pair;
                     in[e.merged] = 0;
                   },
                   [&](const UnconfinedEvent& e) { in[e.v] = 0; },
                   [&](const TwinEvent& e) {
                     const bool take_neighborhood = e.gadget && in[*e.gadget];
                     for (Vertex x : e.neighborhood) in[x] = take_neighborhood;
                     in[e.u] = in[e.v] = !take_neighborhood;
                     if (e.gadget) in[*e.gadget] = 0;
                   },
               },
               *it);
  }
  std::vector<Vertex> out;
  for (Vertex v = 0; v < trace.input_vertices; ++v) {
    if (in[v]) out.push_back(v);
  }
  return out;
}

}  // namespace misgcn
