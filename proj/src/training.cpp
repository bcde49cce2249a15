#include "misgcn/training.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <string>

#include "misgcn/error.hpp"

namespace misgcn {

double bce_loss(std::span<const double> prediction, std::span<const std::uint8_t> label) {
  if (prediction.size() != label.size()) {
    throw ContractViolation("prediction has " + std::to_string(prediction.size()) +
                            " entries, label has " + std::to_string(label.size()));
  }
  double loss = 0.0;
  for (std::size_t j = 0; j < prediction.size(); ++j) {
    const double p = std::clamp(prediction[j], kPredictionEpsilon, 1.0 - kPredictionEpsilon);
    loss -= label[j] ? std::log(p) : std::log1p(-p);
  }
  return loss;
}

HindsightLoss hindsight_loss(const ProbabilityMaps& maps, std::span<const std::uint8_t> label) {
  if (static_cast<std::size_t>(maps.num_vertices()) != label.size()) {
    throw ContractViolation("label length does not match the vertex count");
  }
  HindsightLoss best{std::numeric_limits<double>::infinity(), 0};
  std::vector<double> column(label.size());
  for (int m = 0; m < maps.num_maps(); ++m) {
    for (std::size_t j = 0; j < label.size(); ++j) column[j] = maps.values(static_cast<Eigen::Index>(j), m);
    const double loss = bce_loss(column, label);
    if (m == 0 || loss < best.loss) best = {loss, m};
  }
  return best;
}

Gradient backward(const GcnModel& model, const Graph& g, std::span<const std::uint8_t> label) {
  ForwardCache cache;
  const ProbabilityMaps maps = forward(model, g, cache);
  const HindsightLoss best = hindsight_loss(maps, label);
  const int layers = model.num_layers();
  const Vertex n = g.num_vertices();

  Gradient grad;
  grad.loss = best.loss;
  grad.map = best.map;
  grad.self_weights.resize(layers);
  grad.neighbor_weights.resize(layers);

  // d loss / d logits: p - l on the chosen map, zero where the clamp is active.
  Matrix upstream = Matrix::Zero(n, maps.num_maps());
  for (Vertex j = 0; j < n; ++j) {
    const double p = maps.values(j, best.map);
    if (p >= kPredictionEpsilon && p <= 1.0 - kPredictionEpsilon) {
      upstream(j, best.map) = p - static_cast<double>(label[j]);
    }
  }
  for (int l = layers - 1; l >= 0; --l) {
    grad.self_weights[l].noalias() = cache.hidden[l].transpose() * upstream;
    grad.neighbor_weights[l].noalias() = cache.propagated[l].transpose() * upstream;
    if (l == 0) break;
    Matrix through_neighbors = upstream * model.neighbor_weights[l].transpose();
    Matrix d_hidden = upstream * model.self_weights[l].transpose();
    d_hidden.noalias() += cache.adjacency.matrix * through_neighbors;  // Â is symmetric
    upstream = d_hidden.cwiseProduct((cache.hidden[l].array() > 0.0).cast<double>().matrix());
  }
  return grad;
}

AdamState::AdamState(const GcnModel& model, AdamConfig config) : config_(config) {
  for (int l = 0; l < model.num_layers(); ++l) {
    const auto rows = model.self_weights[l].rows();
    const auto cols = model.self_weights[l].cols();
    m_self_.push_back(Matrix::Zero(rows, cols));
    v_self_.push_back(Matrix::Zero(rows, cols));
    m_neighbor_.push_back(Matrix::Zero(rows, cols));
    v_neighbor_.push_back(Matrix::Zero(rows, cols));
  }
}

void AdamState::step(GcnModel& model, const Gradient& grad) {
  ++steps_;
  const double t = static_cast<double>(steps_);
  const double correction1 = 1.0 - std::pow(config_.beta1, t);
  const double correction2 = 1.0 - std::pow(config_.beta2, t);
  auto update = [&](Matrix& w, const Matrix& g, Matrix& m, Matrix& v) {
    m = config_.beta1 * m + (1.0 - config_.beta1) * g;
    v = config_.beta2 * v + (1.0 - config_.beta2) * g.cwiseProduct(g);
    w.array() -= config_.learning_rate * (m.array() / correction1) /
                 ((v.array() / correction2).sqrt() + config_.epsilon);
  };
  for (int l = 0; l < model.num_layers(); ++l) {
    update(model.self_weights[l], grad.self_weights[l], m_self_[l], v_self_[l]);
    update(model.neighbor_weights[l], grad.neighbor_weights[l], m_neighbor_[l], v_neighbor_[l]);
  }
}

double mean_hindsight_loss(const GcnModel& model, const TrainingSet& data) {
  double total = 0.0;
  std::size_t count = 0;
  for (const auto& sample : data) {
    const auto maps = forward(model, sample.graph);
    for (const auto& label : sample.labels) {
      total += hindsight_loss(maps, label).loss;
      ++count;
    }
  }
  return count == 0 ? std::numeric_limits<double>::quiet_NaN() : total / static_cast<double>(count);
}

TrainResult train(const TrainingSet& data, const TrainConfig& config, const TrainingSet* validation,
                  const std::function<void(const EpochStats&)>& on_epoch) {
  if (data.empty()) throw ContractViolation("training set is empty");
  for (const auto& sample : data) {
    if (sample.labels.empty()) throw ContractViolation("training sample without labels");
    for (const auto& label : sample.labels) {
      if (label.size() != static_cast<std::size_t>(sample.graph.num_vertices())) {
        throw ContractViolation("label length does not match its graph");
      }
    }
  }
  const auto widths = standard_widths(config.layers, config.width, config.maps);
  TrainResult result;
  result.model = init_model(config.layers, widths, config.seed);
  AdamState adam(result.model, config.adam);
  std::mt19937_64 rng(config.seed ^ 0x9e3779b97f4a7c15ULL);

  auto validation_loss = [&] {
    return validation ? mean_hindsight_loss(result.model, *validation)
                      : std::numeric_limits<double>::quiet_NaN();
  };
  auto record = [&](EpochStats stats) {
    if (!std::isfinite(stats.train_loss)) {
      throw DivergenceError("non-finite training loss at epoch " + std::to_string(stats.epoch));
    }
    result.history.push_back(stats);
    if (on_epoch) on_epoch(stats);
  };
  record({0, mean_hindsight_loss(result.model, data), validation_loss()});

  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double total = 0.0;
    for (std::size_t i : order) {
      const auto& sample = data[i];
      std::uniform_int_distribution<std::size_t> pick(0, sample.labels.size() - 1);
      const auto& label = sample.labels[pick(rng)];
      const Gradient grad = backward(result.model, sample.graph, label);
      if (!std::isfinite(grad.loss)) {
        throw DivergenceError("non-finite loss at epoch " + std::to_string(epoch));
      }
      total += grad.loss;
      adam.step(result.model, grad);
    }
    record({epoch, total / static_cast<double>(data.size()), validation_loss()});
  }
  return result;
}

std::vector<LabelVector> synthesize_labels(const CnfFormula& f, const Assignment& assignment, int k,
                                           std::uint64_t seed) {
  if (k < 1) throw ContractViolation("need at least one label");
  if (!satisfies(f, assignment)) throw ContractViolation("assignment does not satisfy the formula");

  // true literal occurrences per clause, as SAT-graph vertex ids
  std::vector<std::vector<Vertex>> options;
  Vertex next = 0;
  for (const auto& clause : f.clauses) {
    auto& opts = options.emplace_back();
    for (Literal lit : clause) {
      if (assignment[std::abs(lit) - 1] == (lit > 0)) opts.push_back(next);
      ++next;
    }
  }
  const Vertex n = next;

  double combinations = 1.0;
  for (const auto& opts : options) combinations *= static_cast<double>(opts.size());

  auto to_label = [&](const std::vector<std::size_t>& choice) {
    LabelVector label(static_cast<std::size_t>(n), 0);
    for (std::size_t c = 0; c < options.size(); ++c) label[options[c][choice[c]]] = 1;
    return label;
  };

  std::vector<LabelVector> out;
  std::vector<std::size_t> choice(options.size(), 0);
  if (combinations <= static_cast<double>(k)) {
    // enumerate every combination in mixed-radix order
    while (true) {
      out.push_back(to_label(choice));
      std::size_t c = 0;
      while (c < choice.size() && ++choice[c] == options[c].size()) choice[c++] = 0;
      if (c == choice.size()) break;
    }
    return out;
  }
  std::mt19937_64 rng(seed);
  std::set<std::vector<std::size_t>> seen;
  while (static_cast<int>(out.size()) < k) {
    for (std::size_t c = 0; c < options.size(); ++c) {
      std::uniform_int_distribution<std::size_t> pick(0, options[c].size() - 1);
      choice[c] = pick(rng);
    }
    if (seen.insert(choice).second) out.push_back(to_label(choice));
  }
  return out;
}

}  // namespace misgcn
