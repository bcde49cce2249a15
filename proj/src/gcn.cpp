#include "misgcn/gcn.hpp"

#include <cmath>
#include <random>
#include <string>

#include "misgcn/error.hpp"

namespace misgcn {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

void check_widths(std::span<const int> widths) {
  if (widths.size() < 2) throw ContractViolation("a model needs at least one layer");
  for (int w : widths) {
    if (w <= 0) throw ContractViolation("layer widths must be positive");
  }
}

}  // namespace

std::size_t GcnModel::num_parameters() const {
  std::size_t total = 0;
  for (std::size_t l = 0; l < self_weights.size(); ++l) {
    total += static_cast<std::size_t>(self_weights[l].size() + neighbor_weights[l].size());
  }
  return total;
}

void GcnModel::validate() const {
  check_widths(widths);
  const auto layers = static_cast<std::size_t>(num_layers());
  if (self_weights.size() != layers || neighbor_weights.size() != layers) {
    throw ContractViolation("model has " + std::to_string(self_weights.size()) +
                            " weight blocks for " + std::to_string(layers) + " layers");
  }
  for (std::size_t l = 0; l < layers; ++l) {
    for (const Matrix* w : {&self_weights[l], &neighbor_weights[l]}) {
      if (w->rows() != widths[l] || w->cols() != widths[l + 1]) {
        throw ContractViolation("layer " + std::to_string(l) + " weight shape " +
                                std::to_string(w->rows()) + "x" + std::to_string(w->cols()) +
                                " does not match widths " + std::to_string(widths[l]) + "x" +
                                std::to_string(widths[l + 1]));
      }
    }
  }
}

bool GcnModel::operator==(const GcnModel& other) const {
  if (widths != other.widths || metadata != other.metadata) return false;
  if (self_weights.size() != other.self_weights.size() ||
      neighbor_weights.size() != other.neighbor_weights.size()) {
    return false;
  }
  auto same = [](const Matrix& a, const Matrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && (a.array() == b.array()).all();
  };
  for (std::size_t l = 0; l < self_weights.size(); ++l) {
    if (!same(self_weights[l], other.self_weights[l]) ||
        !same(neighbor_weights[l], other.neighbor_weights[l])) {
      return false;
    }
  }
  return true;
}

std::vector<int> standard_widths(int layers, int width, int maps) {
  if (layers < 1) throw ContractViolation("layers must be >= 1");
  std::vector<int> widths(static_cast<std::size_t>(layers) + 1, width);
  widths.back() = maps;
  return widths;
}

GcnModel zero_model(std::span<const int> widths) {
  check_widths(widths);
  GcnModel model;
  model.widths.assign(widths.begin(), widths.end());
  for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
    model.self_weights.push_back(Matrix::Zero(widths[l], widths[l + 1]));
    model.neighbor_weights.push_back(Matrix::Zero(widths[l], widths[l + 1]));
  }
  return model;
}

GcnModel init_model(int layers, std::span<const int> widths, std::uint64_t seed) {
  if (layers < 1 || widths.size() != static_cast<std::size_t>(layers) + 1) {
    throw ContractViolation("expected " + std::to_string(layers + 1) + " widths for " +
                            std::to_string(layers) + " layers, got " +
                            std::to_string(widths.size()));
  }
  GcnModel model = zero_model(widths);
  std::mt19937_64 rng(seed);
  for (int l = 0; l < layers; ++l) {
    const double limit = std::sqrt(6.0 / static_cast<double>(widths[l] + widths[l + 1]));
    std::uniform_real_distribution<double> dist(-limit, limit);
    for (Matrix* w : {&model.self_weights[l], &model.neighbor_weights[l]}) {
      for (Eigen::Index i = 0; i < w->size(); ++i) w->data()[i] = dist(rng);
    }
  }
  return model;
}

std::vector<double> ProbabilityMaps::column(int m) const {
  std::vector<double> out(static_cast<std::size_t>(values.rows()));
  for (Eigen::Index v = 0; v < values.rows(); ++v) out[v] = values(v, m);
  return out;
}

ProbabilityMaps forward(const GcnModel& model, const Graph& g, ForwardCache& cache) {
  model.validate();
  const int layers = model.num_layers();
  const Vertex n = g.num_vertices();
  cache.adjacency = normalized_adjacency(g);
  cache.hidden.clear();
  cache.propagated.clear();
  cache.hidden.reserve(layers);
  cache.propagated.reserve(layers);

  Matrix h = Matrix::Ones(n, model.widths[0]);
  for (int l = 0; l < layers; ++l) {
    Matrix propagated = cache.adjacency.matrix * h;
    Matrix z = h * model.self_weights[l];
    z.noalias() += propagated * model.neighbor_weights[l];
    cache.hidden.push_back(std::move(h));
    cache.propagated.push_back(std::move(propagated));
    if (l + 1 < layers) {
      h = z.cwiseMax(0.0);
    } else {
      cache.logits = std::move(z);
    }
  }
  ProbabilityMaps out;
  out.values = cache.logits.unaryExpr([](double x) { return sigmoid(x); });
  return out;
}

ProbabilityMaps forward(const GcnModel& model, const Graph& g) {
  model.validate();
  const int layers = model.num_layers();
  const Vertex n = g.num_vertices();
  const auto adjacency = normalized_adjacency(g);
  Matrix h = Matrix::Ones(n, model.widths[0]);
  Matrix z;
  for (int l = 0; l < layers; ++l) {
    Matrix propagated = adjacency.matrix * h;
    z.noalias() = h * model.self_weights[l];
    z.noalias() += propagated * model.neighbor_weights[l];
    if (l + 1 < layers) h = z.cwiseMax(0.0);
  }
  ProbabilityMaps out;
  out.values = z.unaryExpr([](double x) { return sigmoid(x); });
  return out;
}

bool maps_equivariant(const ProbabilityMaps& original, const ProbabilityMaps& permuted,
                      std::span<const Vertex> perm, double tol) {
  if (original.values.rows() != permuted.values.rows() ||
      original.values.cols() != permuted.values.cols() ||
      static_cast<Eigen::Index>(perm.size()) != original.values.rows()) {
    return false;
  }
  for (Eigen::Index v = 0; v < original.values.rows(); ++v) {
    for (Eigen::Index m = 0; m < original.values.cols(); ++m) {
      if (!(std::abs(original.values(v, m) - permuted.values(perm[v], m)) <= tol)) return false;
    }
  }
  return true;
}

bool permute_check(const GcnModel& model, const Graph& g, std::span<const Vertex> perm,
                   double tol) {
  const Graph permuted = permute_graph(g, perm);
  return maps_equivariant(forward(model, g), forward(model, permuted), perm, tol);
}

}  // namespace misgcn
