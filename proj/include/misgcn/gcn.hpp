#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "misgcn/graph.hpp"

namespace misgcn {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Bias-free graph convolutional network:
///   H^{l+1} = act(H^l W0^l + Â H^l W1^l),  H^0 = ones(N, C^0)
/// with ReLU on hidden layers and a sigmoid on the last one. The last width
/// is the number of probability maps.
struct GcnModel {
  /// C^0 .. C^L.
  std::vector<int> widths;
  /// Self weights, C^l x C^{l+1}.
  std::vector<Matrix> self_weights;
  /// Neighbor weights, C^l x C^{l+1}.
  std::vector<Matrix> neighbor_weights;
  /// Free-form key/value pairs persisted in the model header (training
  /// hyperparameters, seed, ...).
  std::vector<std::pair<std::string, std::string>> metadata;

  int num_layers() const noexcept { return static_cast<int>(widths.size()) - 1; }
  int num_maps() const noexcept { return widths.empty() ? 0 : widths.back(); }
  std::size_t num_parameters() const;

  /// Throws ContractViolation when weight shapes disagree with widths.
  void validate() const;

  bool operator==(const GcnModel& other) const;
};

/// Widths for the standard layout: C^0 = width, hidden widths = width,
/// output width = maps.
std::vector<int> standard_widths(int layers, int width, int maps);

/// Weights i.i.d. uniform in ±sqrt(6 / (C^l + C^{l+1})), deterministic in seed.
GcnModel init_model(int layers, std::span<const int> widths, std::uint64_t seed);

/// Same shapes as init_model, all weights zero.
GcnModel zero_model(std::span<const int> widths);

/// N x M matrix of per-vertex likelihoods; column m is map m.
struct ProbabilityMaps {
  Matrix values;

  Vertex num_vertices() const noexcept { return static_cast<Vertex>(values.rows()); }
  int num_maps() const noexcept { return static_cast<int>(values.cols()); }
  std::vector<double> column(int m) const;
};

/// Intermediate activations kept for backpropagation.
struct ForwardCache {
  NormalizedAdjacency adjacency;
  /// hidden[l] = H^l, l = 0..L-1 (post-activation inputs to layer l).
  std::vector<Matrix> hidden;
  /// propagated[l] = Â H^l.
  std::vector<Matrix> propagated;
  /// Pre-activation of the last layer (logits).
  Matrix logits;
};

ProbabilityMaps forward(const GcnModel& model, const Graph& g);
ProbabilityMaps forward(const GcnModel& model, const Graph& g, ForwardCache& cache);

/// True iff `permuted` equals `original` with rows relabelled by perm
/// (row v of original == row perm[v] of permuted) within tol.
bool maps_equivariant(const ProbabilityMaps& original, const ProbabilityMaps& permuted,
                      std::span<const Vertex> perm, double tol = 1e-9);

/// forward(model, perm(g)) == perm . forward(model, g) within tol.
bool permute_check(const GcnModel& model, const Graph& g, std::span<const Vertex> perm,
                   double tol = 1e-9);

}  // namespace misgcn
