#include "misgcn/tree_search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <deque>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <thread>

#include "misgcn/error.hpp"
#include "misgcn/local_search.hpp"

namespace misgcn {

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
  h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::vector<Vertex> descending_order(std::span<const double> scores) {
  std::vector<Vertex> order(scores.size());
  std::iota(order.begin(), order.end(), Vertex{0});
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return scores[a] > scores[b]; });
  return order;
}

Kernelization root_kernelization(const Graph& g, const SearchConfig& config) {
  return config.reduction ? reduce(g) : identity_kernelization(g);
}

int maps_in_use(const GcnModel& model, const SearchConfig& config) {
  const int available = model.num_maps();
  if (config.maps < 0 || config.maps > available) {
    throw ContractViolation("requested " + std::to_string(config.maps) + " maps, model has " +
                            std::to_string(available));
  }
  return config.maps == 0 ? available : config.maps;
}

/// Weighted random ordering: key log(u) / p, larger first.
std::vector<double> sampled_scores(std::span<const double> probabilities, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> keys(probabilities.size());
  for (std::size_t v = 0; v < probabilities.size(); ++v) {
    const double u = std::max(unit(rng), 1e-300);
    const double p = probabilities[v];
    keys[v] = p > 0.0 ? std::log(u) / p : -std::numeric_limits<double>::infinity();
  }
  return keys;
}

class SearchEngine {
 public:
  SearchEngine(const Graph& g, const GcnModel& model, const SearchConfig& config)
      : start_(Clock::now()),
        g_(g),
        model_(model),
        config_(config),
        maps_(maps_in_use(model, config)),
        root_kernel_(root_kernelization(g, config)),
        root_(make_root(root_kernel_)) {
    // Lifting the empty kernel solution is always valid.
    offer(lift(root_kernel_, std::span<const Vertex>{}), /*complete=*/false);
  }

  BestSolution run() {
    if (!root_.is_complete() && !target_reached()) {
      if (config_.threads == 1) {
        worker(0);
      } else {
        std::vector<std::thread> workers;
        for (int t = 0; t < config_.threads; ++t) workers.emplace_back([this, t] { worker(t); });
        for (auto& w : workers) w.join();
      }
    }
    best_.seconds = elapsed();
    best_.expansions = expansions_.load();
    return best_;
  }

 private:
  struct QueuedNode {
    SearchNode node;
    std::uint64_t id;
  };

  double elapsed() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

  bool target_reached() {
    std::lock_guard lock(best_mu_);
    return config_.target && best_.size >= *config_.target;
  }

  void offer(std::vector<Vertex> solution, bool complete) {
    if (!is_independent_set(g_, solution)) throw InternalError("search produced a dependent set");
    std::lock_guard lock(best_mu_);
    if (complete) ++best_.solutions;
    const int size = static_cast<int>(solution.size());
    if (size > best_.size || best_.log.empty()) {
      best_.size = size;
      best_.vertices = std::move(solution);
      best_.log.push_back({elapsed(), size});
    }
    if (config_.target && best_.size >= *config_.target) stop_ = true;
  }

  bool claim_expansion() {
    if (stop_) return false;
    if (elapsed() >= config_.time_budget_s) {
      stop_ = true;
      return false;
    }
    const auto ticket = expansions_.fetch_add(1);
    if (config_.max_expansions != 0 && ticket >= config_.max_expansions) {
      expansions_.fetch_sub(1);
      stop_ = true;
      return false;
    }
    return true;
  }

  QueuedNode pop(std::mt19937_64& rng) {
    std::lock_guard lock(queue_mu_);
    if (queue_.empty()) queue_.push_back({root_, next_id_++});
    std::uniform_int_distribution<std::size_t> pick(0, queue_.size() - 1);
    const auto index = pick(rng);
    QueuedNode node = std::move(queue_[index]);
    queue_.erase(queue_.begin() + static_cast<std::ptrdiff_t>(index));
    digest_ = mix(digest_, node.id);
    return node;
  }

  void push(SearchNode node) {
    std::lock_guard lock(queue_mu_);
    if (queue_.size() >= config_.queue_capacity) queue_.pop_front();
    queue_.push_back({std::move(node), next_id_++});
  }

  void worker(int t) {
    std::mt19937_64 rng(config_.seed + static_cast<std::uint64_t>(t));
    while (claim_expansion()) {
      const QueuedNode item = pop(rng);
      const ProbabilityMaps maps = forward(model_, *item.node.graph);
      for (int m = 0; m < maps_ && !stop_; ++m) {
        std::vector<double> scores = maps.column(config_.child_mode == ChildMode::kMaps ? m : 0);
        if (config_.child_mode == ChildMode::kSampled) scores = sampled_scores(scores, rng);
        SearchNode child = greedy_label_pass(item.node, scores, config_.rekernelize);
        if (child.is_complete()) {
          std::vector<Vertex> solution = lift_node(child, root_kernel_);
          if (config_.local_search) solution = two_improve(g_, solution);
          offer(std::move(solution), true);
        } else {
          push(std::move(child));
        }
      }
    }
    std::lock_guard lock(queue_mu_);
    best_.digest = mix(digest_, static_cast<std::uint64_t>(best_.size));
  }

  Clock::time_point start_;
  const Graph& g_;
  const GcnModel& model_;
  SearchConfig config_;
  int maps_;
  Kernelization root_kernel_;
  SearchNode root_;

  std::mutex queue_mu_;
  std::deque<QueuedNode> queue_;
  std::uint64_t next_id_ = 0;
  std::uint64_t digest_ = 0;

  std::mutex best_mu_;
  BestSolution best_;

  std::atomic<bool> stop_{false};
  std::atomic<std::uint64_t> expansions_{0};
};

}  // namespace

void SearchConfig::validate() const {
  if (!(time_budget_s >= 0.0)) throw ContractViolation("time budget must be nonnegative");
  if (threads < 1) throw ContractViolation("thread count must be at least 1");
  if (maps < 0) throw ContractViolation("map count must be nonnegative");
  if (queue_capacity < 1) throw ContractViolation("queue capacity must be positive");
}

VertexLabelling greedy_labels(const Graph& g, std::span<const double> scores) {
  if (static_cast<Vertex>(scores.size()) != g.num_vertices()) {
    throw ContractViolation("score vector length does not match the graph");
  }
  VertexLabelling labels(g.num_vertices());
  for (Vertex v : descending_order(scores)) {
    if (labels[v] != Label::kUnlabelled) break;
    labels.set(v, Label::kOne);
    for (Vertex u : g.neighbors(v)) labels.set(u, Label::kZero);
  }
  return labels;
}

SearchNode make_root(const Kernelization& root) {
  SearchNode node;
  node.graph = std::make_shared<const Graph>(root.kernel);
  return node;
}

SearchNode greedy_label_pass(const SearchNode& node, std::span<const double> scores, bool rekernelize) {
  const Graph& g = *node.graph;
  const VertexLabelling labels = greedy_labels(g, scores);

  auto step = std::make_shared<SearchStep>();
  step->parent = node.history;
  std::vector<Vertex> residual;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (labels[v] == Label::kOne) step->chosen.push_back(v);
    if (labels[v] == Label::kUnlabelled) residual.push_back(v);
  }
  InducedSubgraph sub = induced_subgraph(g, residual);
  step->residual_to_parent = std::move(sub.to_parent);

  SearchNode child;
  child.depth = node.depth + 1;
  if (rekernelize && !sub.graph.is_empty()) {
    step->kernel = reduce(sub.graph);
    child.graph = std::make_shared<const Graph>(step->kernel->kernel);
  } else {
    child.graph = std::make_shared<const Graph>(std::move(sub.graph));
  }
  child.history = std::move(step);
  return child;
}

std::vector<Vertex> lift_node(const SearchNode& node, const Kernelization& root) {
  if (!node.is_complete()) throw ContractViolation("cannot lift an incomplete node");
  std::vector<Vertex> solution;
  for (const SearchStep* step = node.history.get(); step != nullptr; step = step->parent.get()) {
    std::vector<Vertex> on_residual = step->kernel ? lift(*step->kernel, solution) : solution;
    std::vector<Vertex> on_parent = step->chosen;
    for (Vertex v : on_residual) on_parent.push_back(step->residual_to_parent[v]);
    solution = std::move(on_parent);
  }
  return lift(root, solution);
}

BestSolution basic_solve(const Graph& g, const GcnModel& model, const SearchConfig& config) {
  config.validate();
  const auto start = Clock::now();
  const Kernelization root = root_kernelization(g, config);
  SearchNode node = make_root(root);
  BestSolution best;
  while (!node.is_complete()) {
    const ProbabilityMaps maps = forward(model, *node.graph);
    node = greedy_label_pass(node, maps.column(0), config.rekernelize);
    ++best.expansions;
  }
  std::vector<Vertex> solution = lift_node(node, root);
  if (config.local_search) solution = two_improve(g, solution);
  if (!is_independent_set(g, solution)) throw InternalError("basic solver produced a dependent set");
  best.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  best.size = static_cast<int>(solution.size());
  best.vertices = std::move(solution);
  best.solutions = 1;
  best.log.push_back({best.seconds, best.size});
  return best;
}

BestSolution tree_search(const Graph& g, const GcnModel& model, const SearchConfig& config) {
  config.validate();
  model.validate();
  return SearchEngine(g, model, config).run();
}

BestSolution parallel_tree_search(const Graph& g, const GcnModel& model, const SearchConfig& config) {
  if (config.threads < 2) throw ContractViolation("parallel tree search needs at least 2 threads");
  return tree_search(g, model, config);
}

std::vector<Vertex> min_degree_greedy(const Graph& g) {
  const Vertex n = g.num_vertices();
  std::vector<Vertex> degree(static_cast<std::size_t>(n));
  std::vector<char> removed(static_cast<std::size_t>(n), 0);
  std::set<std::pair<Vertex, Vertex>> by_degree;
  for (Vertex v = 0; v < n; ++v) {
    degree[v] = g.degree(v);
    by_degree.emplace(degree[v], v);
  }
  auto remove = [&](Vertex v) {
    removed[v] = 1;
    by_degree.erase({degree[v], v});
    for (Vertex u : g.neighbors(v)) {
      if (removed[u]) continue;
      by_degree.erase({degree[u], u});
      by_degree.emplace(--degree[u], u);
    }
  };
  std::vector<Vertex> out;
  while (!by_degree.empty()) {
    const Vertex v = by_degree.begin()->second;
    out.push_back(v);
    remove(v);
    for (Vertex u : g.neighbors(v)) {
      if (!removed[u]) remove(u);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace misgcn
