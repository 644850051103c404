#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "playground/datagen.hpp"
#include "playground/features.hpp"
#include "playground/network.hpp"

namespace playground {

/// Complete bookmarkable experiment state.
struct Config {
  Problem problem = Problem::classification;
  DatasetKind dataset = DatasetKind::gauss;
  int noise = 0;
  int train_percent = 50;
  int batch_size = 10;
  double learning_rate = 0.03;
  Activation hidden_activation = Activation::tanh;
  Regularization reg = Regularization::none;
  double reg_rate = 0.0;
  std::vector<int> hidden_layer_sizes = {4, 2};
  std::vector<FeatureId> enabled_features = {FeatureId::x1, FeatureId::x2};
  std::uint32_t seed = 42;

  friend bool operator==(const Config&, const Config&) = default;
};

inline constexpr int kMinNoise = 0, kMaxNoise = 50;
inline constexpr int kMinTrainPercent = 10, kMaxTrainPercent = 90;
inline constexpr int kMinBatchSize = 1, kMaxBatchSize = 30;
inline constexpr double kMinLearningRate = 1e-5;

class InvalidConfig : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws InvalidConfig naming the first field out of range.
inline void validate(const Config& c) {
  auto fail = [](const std::string& what) { throw InvalidConfig(what); };
  if (c.noise < kMinNoise || c.noise > kMaxNoise) fail("noise must be in [0, 50]");
  if (c.train_percent < kMinTrainPercent || c.train_percent > kMaxTrainPercent)
    fail("train percent must be in [10, 90]");
  if (c.batch_size < kMinBatchSize || c.batch_size > kMaxBatchSize)
    fail("batch size must be in [1, 30]");
  if (!std::isfinite(c.learning_rate) || c.learning_rate <= 0.0)
    fail("learning rate must be positive and finite");
  if (!std::isfinite(c.reg_rate) || c.reg_rate < 0.0)
    fail("regularization rate must be non-negative and finite");
  if (c.hidden_layer_sizes.size() > kMaxHiddenLayers) fail("at most 6 hidden layers");
  for (int size : c.hidden_layer_sizes)
    if (size < 1 || size > kMaxUnitsPerLayer) fail("hidden layer size must be in [1, 8]");
  if (!is_canonical_feature_set(c.enabled_features))
    fail("features must be non-empty, unique and in canonical order");
  if (is_regression(c.dataset) != (c.problem == Problem::regression))
    fail("dataset kind does not match the problem type");
}

inline bool is_valid(const Config& c) {
  try {
    validate(c);
    return true;
  } catch (const InvalidConfig&) {
    return false;
  }
}

}  // namespace playground
