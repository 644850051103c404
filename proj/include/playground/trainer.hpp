#pragma once

#include <cmath>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

#include "playground/config.hpp"
#include "playground/datagen.hpp"
#include "playground/format.hpp"
#include "playground/network.hpp"
#include "playground/rng.hpp"

namespace playground {

struct LossEntry {
  int epoch = 0;
  double train_loss = 0.0;
  double test_loss = 0.0;

  friend bool operator==(const LossEntry&, const LossEntry&) = default;
};

struct TrainerState {
  Rng rng;
  Network net;
  Dataset dataset;
  int epoch = 0;
  std::vector<LossEntry> loss_series;
  bool running = false;

  friend bool operator==(const TrainerState&, const TrainerState&) = default;
};

/// Mean of ½(prediction − label)² over `points`.
inline double loss(const Network& net, std::span<const Point> points) {
  if (points.empty()) throw std::invalid_argument("loss over an empty point set");
  std::vector<double> feats(net.input_width());
  std::vector<double> outputs(net.nodes().size());
  double total = 0.0;
  for (const Point& p : points) {
    feature_vector(net.features(), p.x1, p.x2, feats);
    const double residual = net.evaluate(feats, outputs) - p.label;
    total += 0.5 * residual * residual;
  }
  return total / static_cast<double>(points.size());
}

/// Fraction of points whose prediction sign matches the label sign
/// (sign(0) is +1). Classification only.
inline double accuracy(const Network& net, std::span<const Point> points) {
  if (net.problem() != Problem::classification)
    throw std::logic_error("accuracy is only defined for classification");
  if (points.empty()) throw std::invalid_argument("accuracy over an empty point set");
  std::vector<double> feats(net.input_width());
  std::vector<double> outputs(net.nodes().size());
  std::size_t correct = 0;
  for (const Point& p : points) {
    feature_vector(net.features(), p.x1, p.x2, feats);
    const bool predicted = net.evaluate(feats, outputs) >= 0.0;
    if (predicted == (p.label >= 0.0)) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(points.size());
}

/// Fresh state for `config`. One Rng stream seeded from config.seed feeds, in
/// order: dataset generation, the train/test split, weight init, and then
/// every epoch's shuffle.
inline TrainerState make_trainer_state(const Config& config) {
  validate(config);
  TrainerState state;
  state.rng = Rng(config.seed);
  state.dataset.kind = config.dataset;
  state.dataset.points =
      generate(config.dataset, kDefaultPointCount, config.noise, state.rng);
  auto [train, test] =
      split(state.dataset.points.size(), config.train_percent, state.rng);
  state.dataset.train_indices = std::move(train);
  state.dataset.test_indices = std::move(test);
  state.net = Network::build(config.hidden_layer_sizes, config.enabled_features,
                             config.hidden_activation, config.problem, state.rng);
  return state;
}

/// One pass over a fresh shuffle of the training set in consecutive
/// mini-batches; the last batch may be short. Appends the post-epoch train
/// and test losses, both summed in the fixed split order.
inline void run_epoch(TrainerState& state, const Config& config) {
  if (state.dataset.train_indices.empty()) throw std::runtime_error("training set is empty");
  std::vector<std::size_t> order = state.dataset.train_indices;
  shuffle(order, state.rng);

  Network& net = state.net;
  std::vector<double> feats(net.input_width());
  const std::size_t batch = static_cast<std::size_t>(config.batch_size);
  for (std::size_t start = 0; start < order.size(); start += batch) {
    const std::size_t end = std::min(order.size(), start + batch);
    for (std::size_t k = start; k < end; ++k) {
      const Point& p = state.dataset.points[order[k]];
      feature_vector(net.features(), p.x1, p.x2, feats);
      net.forward(feats);
      net.backward(p.label);
    }
    net.apply_update(config.learning_rate, config.reg, config.reg_rate);
  }

  ++state.epoch;
  const std::vector<Point> train = state.dataset.train_points();
  const std::vector<Point> test = state.dataset.test_points();
  state.loss_series.push_back(
      {state.epoch, loss(net, train), test.empty() ? 0.0 : loss(net, test)});
}

/// Keys that can change mid-run without touching weights or history.
inline bool only_hot_keys_differ(const Config& a, const Config& b) {
  Config a_cold = a;
  a_cold.learning_rate = b.learning_rate;
  a_cold.batch_size = b.batch_size;
  a_cold.reg = b.reg;
  a_cold.reg_rate = b.reg_rate;
  return a_cold == b;
}

/// Applies a config edit. Edits limited to learning rate, batch size and
/// regularization leave the state alone (they are read on the next batch);
/// anything else rebuilds the session from `next`, keeping the running flag.
/// An invalid `next` throws and leaves `state` untouched.
inline void apply_config_change(TrainerState& state, const Config& previous,
                                const Config& next) {
  validate(next);
  if (only_hot_keys_differ(previous, next)) return;
  const bool running = state.running;
  state = make_trainer_state(next);
  state.running = running;
}

/// `epoch,train_loss,test_loss` CSV, one row per epoch.
inline void write_loss_csv(std::ostream& os, std::span<const LossEntry> series) {
  os << "epoch,train_loss,test_loss\n";
  for (const LossEntry& e : series)
    os << e.epoch << ',' << format_double(e.train_loss) << ','
       << format_double(e.test_loss) << '\n';
}

}  // namespace playground
