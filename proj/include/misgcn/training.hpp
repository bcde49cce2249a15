#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "misgcn/gcn.hpp"
#include "misgcn/instance_io.hpp"

namespace misgcn {

/// Binary label vector: 1 marks a solution vertex.
using LabelVector = std::vector<std::uint8_t>;

struct TrainingSample {
  Graph graph;
  /// One or more optimal labellings of `graph`.
  std::vector<LabelVector> labels;
};

using TrainingSet = std::vector<TrainingSample>;

inline constexpr double kPredictionEpsilon = 1e-12;

/// -sum_j [l_j log p_j + (1 - l_j) log(1 - p_j)] with p clamped to
/// [eps, 1 - eps]. Throws ContractViolation on length mismatch.
double bce_loss(std::span<const double> prediction, std::span<const std::uint8_t> label);

struct HindsightLoss {
  double loss = 0.0;
  /// Map achieving the minimum; ties go to the smallest index.
  int map = 0;
};

/// min over maps of bce_loss(map m, label).
HindsightLoss hindsight_loss(const ProbabilityMaps& maps, std::span<const std::uint8_t> label);

struct Gradient {
  std::vector<Matrix> self_weights;
  std::vector<Matrix> neighbor_weights;
  double loss = 0.0;
  int map = 0;
};

/// Exact gradient of the hindsight loss for one (graph, label) sample. Only
/// the best map's logits receive loss gradient.
Gradient backward(const GcnModel& model, const Graph& g, std::span<const std::uint8_t> label);

struct AdamConfig {
  double learning_rate = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

class AdamState {
 public:
  AdamState(const GcnModel& model, AdamConfig config);

  void step(GcnModel& model, const Gradient& grad);
  std::uint64_t steps() const noexcept { return steps_; }
  const AdamConfig& config() const noexcept { return config_; }

 private:
  AdamConfig config_;
  std::uint64_t steps_ = 0;
  std::vector<Matrix> m_self_, v_self_, m_neighbor_, v_neighbor_;
};

struct TrainConfig {
  int epochs = 200;
  int layers = 20;
  int width = 32;
  int maps = 32;
  std::uint64_t seed = 0;
  AdamConfig adam;
};

struct EpochStats {
  int epoch = 0;
  /// Mean hindsight loss over the epoch's training steps (pre-update).
  /// For epoch 0 this is the initial model evaluated on the training set.
  double train_loss = 0.0;
  /// Mean hindsight loss on the validation set after the epoch, or NaN.
  double validation_loss = 0.0;
};

struct TrainResult {
  GcnModel model;
  /// history[0] describes the initial model; history[e] the state after
  /// epoch e.
  std::vector<EpochStats> history;
};

/// Mean over samples and labels of the hindsight loss.
double mean_hindsight_loss(const GcnModel& model, const TrainingSet& data);

/// Adam over shuffled single-graph steps; each step samples one of the
/// sample's labels uniformly. Deterministic in config.seed. Throws
/// DivergenceError on a non-finite loss.
TrainResult train(const TrainingSet& data, const TrainConfig& config,
                  const TrainingSet* validation = nullptr,
                  const std::function<void(const EpochStats&)>& on_epoch = {});

/// Up to k distinct labellings of the SAT graph of f: one true literal
/// occurrence chosen per clause. Throws ContractViolation when the
/// assignment does not satisfy f.
std::vector<LabelVector> synthesize_labels(const CnfFormula& f, const Assignment& assignment, int k,
                                           std::uint64_t seed);

}  // namespace misgcn
