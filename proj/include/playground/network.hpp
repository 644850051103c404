#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "playground/features.hpp"
#include "playground/rng.hpp"

namespace playground {

enum class Activation { tanh, relu, sigmoid, linear };
enum class Problem { classification, regression };
enum class Regularization { none, l1, l2 };

constexpr std::string_view to_string(Activation a) {
  switch (a) {
    case Activation::tanh: return "tanh";
    case Activation::relu: return "relu";
    case Activation::sigmoid: return "sigmoid";
    case Activation::linear: return "linear";
  }
  return "?";
}

constexpr std::string_view to_string(Regularization r) {
  switch (r) {
    case Regularization::none: return "none";
    case Regularization::l1: return "l1";
    case Regularization::l2: return "l2";
  }
  return "?";
}

inline double activate(Activation a, double x) {
  switch (a) {
    case Activation::tanh: return std::tanh(x);
    case Activation::relu: return x > 0.0 ? x : 0.0;
    case Activation::sigmoid: return 1.0 / (1.0 + std::exp(-x));
    case Activation::linear: return x;
  }
  return x;
}

/// f'(x) given x and f(x). ReLU's derivative at the kink is 0.
inline double activation_derivative(Activation a, double x, double fx) {
  switch (a) {
    case Activation::tanh: return 1.0 - fx * fx;
    case Activation::relu: return x > 0.0 ? 1.0 : 0.0;
    case Activation::sigmoid: return fx * (1.0 - fx);
    case Activation::linear: return 1.0;
  }
  return 1.0;
}

inline constexpr std::size_t kMaxHiddenLayers = 6;
inline constexpr int kMaxUnitsPerLayer = 8;
inline constexpr double kInitialBias = 0.1;

struct Node {
  std::string id;
  double bias = kInitialBias;
  std::vector<std::size_t> input_links;
  double output = 0.0;
  double input_sum = 0.0;
  double bias_gradient = 0.0;
  int batch_count = 0;
  // backprop scratch
  double output_derivative = 0.0;
  double input_derivative = 0.0;

  friend bool operator==(const Node&, const Node&) = default;
};

struct Link {
  std::size_t source = 0;  // flat node index
  std::size_t dest = 0;
  double weight = 0.0;
  double accumulated_gradient = 0.0;
  int batch_count = 0;

  friend bool operator==(const Link&, const Link&) = default;
};

/// Fully connected feed-forward net stored as an explicit node/link graph.
///
/// Nodes are kept flat in layer order; layer 0 holds one node per enabled
/// feature and the last layer is the single output unit. Links are stored in
/// initialization order: layer by layer, destination by destination, inputs
/// in source order. That order is also the positional weight order exposed
/// to clients.
class Network {
 public:
  static Network build(std::span<const int> hidden_layer_sizes,
                       std::span<const FeatureId> enabled_features,
                       Activation hidden_activation, Problem problem,
                       Rng& rng) {
    if (enabled_features.empty())
      throw std::invalid_argument("network needs at least one input feature");
    if (!is_canonical_feature_set(enabled_features))
      throw std::invalid_argument("features must be unique and in canonical order");
    if (hidden_layer_sizes.size() > kMaxHiddenLayers)
      throw std::invalid_argument("at most 6 hidden layers are supported");
    for (int size : hidden_layer_sizes)
      if (size < 1 || size > kMaxUnitsPerLayer)
        throw std::invalid_argument("hidden layer size must be in [1, 8]");

    Network net;
    net.features_.assign(enabled_features.begin(), enabled_features.end());
    net.hidden_activation_ = hidden_activation;
    net.output_activation_ = problem == Problem::classification
                                 ? Activation::tanh
                                 : Activation::linear;
    net.problem_ = problem;

    auto add_layer = [&](std::size_t width, auto&& name_of) {
      net.layer_begin_.push_back(net.nodes_.size());
      for (std::size_t i = 0; i < width; ++i) {
        Node node;
        node.id = name_of(i);
        net.nodes_.push_back(std::move(node));
      }
    };
    add_layer(enabled_features.size(), [&](std::size_t i) {
      return std::string(to_string(enabled_features[i]));
    });
    for (std::size_t l = 0; l < hidden_layer_sizes.size(); ++l) {
      add_layer(static_cast<std::size_t>(hidden_layer_sizes[l]),
                [&](std::size_t i) {
                  return "h" + std::to_string(l + 1) + "_" + std::to_string(i);
                });
    }
    add_layer(1, [](std::size_t) { return std::string("out"); });
    net.layer_begin_.push_back(net.nodes_.size());

    for (std::size_t l = 1; l < net.layer_count(); ++l) {
      for (std::size_t d = net.layer_begin_[l]; d < net.layer_begin_[l + 1]; ++d) {
        for (std::size_t s = net.layer_begin_[l - 1]; s < net.layer_begin_[l]; ++s) {
          net.nodes_[d].input_links.push_back(net.links_.size());
          net.links_.push_back(Link{s, d, rng.uniform(-0.5, 0.5)});
        }
      }
    }
    return net;
  }

  std::size_t layer_count() const { return layer_begin_.size() - 1; }
  std::size_t layer_begin(std::size_t layer) const { return layer_begin_[layer]; }
  std::size_t layer_end(std::size_t layer) const { return layer_begin_[layer + 1]; }
  std::size_t layer_width(std::size_t layer) const {
    return layer_end(layer) - layer_begin(layer);
  }
  std::size_t input_width() const { return layer_width(0); }
  std::size_t output_index() const { return nodes_.size() - 1; }

  std::span<const Node> nodes() const { return nodes_; }
  std::span<Node> nodes() { return nodes_; }
  std::span<const Link> links() const { return links_; }
  std::span<Link> links() { return links_; }
  std::span<const FeatureId> features() const { return features_; }

  Activation hidden_activation() const { return hidden_activation_; }
  Activation output_activation() const { return output_activation_; }
  Problem problem() const { return problem_; }

  std::optional<std::size_t> find_node(std::string_view id) const {
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      if (nodes_[i].id == id) return i;
    return std::nullopt;
  }

  Activation activation_of(std::size_t node_index) const {
    return node_index == output_index() ? output_activation_ : hidden_activation_;
  }

  std::vector<double> weights() const {
    std::vector<double> out;
    out.reserve(links_.size());
    for (const Link& link : links_) out.push_back(link.weight);
    return out;
  }

  /// Biases of every non-input node, in node order.
  std::vector<double> biases() const {
    std::vector<double> out;
    for (std::size_t i = layer_begin(1); i < nodes_.size(); ++i)
      out.push_back(nodes_[i].bias);
    return out;
  }

  /// Runs the net on one feature vector, caching sums and outputs on nodes.
  double forward(std::span<const double> feature_values) {
    if (feature_values.size() != input_width())
      throw std::invalid_argument("feature vector width does not match the input layer");
    for (std::size_t i = 0; i < input_width(); ++i) {
      nodes_[i].output = feature_values[i];
      nodes_[i].input_sum = feature_values[i];
    }
    for (std::size_t i = layer_begin(1); i < nodes_.size(); ++i) {
      Node& node = nodes_[i];
      double sum = node.bias;
      for (std::size_t li : node.input_links)
        sum += links_[li].weight * nodes_[links_[li].source].output;
      node.input_sum = sum;
      node.output = activate(activation_of(i), sum);
    }
    return nodes_.back().output;
  }

  /// Cache-free evaluation: writes every node's activation to `outputs`
  /// (indexed like nodes()) and leaves the network untouched. Uses the same
  /// summation order as forward(), so results agree bit for bit.
  double evaluate(std::span<const double> feature_values,
                  std::span<double> outputs) const {
    for (std::size_t i = 0; i < input_width(); ++i) outputs[i] = feature_values[i];
    for (std::size_t i = layer_begin(1); i < nodes_.size(); ++i) {
      double sum = nodes_[i].bias;
      for (std::size_t li : nodes_[i].input_links)
        sum += links_[li].weight * outputs[links_[li].source];
      outputs[i] = activate(activation_of(i), sum);
    }
    return outputs[nodes_.size() - 1];
  }

  double predict(double x1, double x2) const {
    std::vector<double> feats = feature_vector(features_, x1, x2);
    std::vector<double> outputs(nodes_.size());
    return evaluate(feats, outputs);
  }

  /// Accumulates d(½(output − target)²) into link and bias accumulators.
  /// Requires a preceding forward() for the same sample.
  void backward(double target) {
    Node& out = nodes_.back();
    out.output_derivative = out.output - target;
    for (std::size_t l = layer_count() - 1; l >= 1; --l) {
      for (std::size_t i = layer_begin(l); i < layer_end(l); ++i) {
        Node& node = nodes_[i];
        node.input_derivative =
            node.output_derivative *
            activation_derivative(activation_of(i), node.input_sum, node.output);
        node.bias_gradient += node.input_derivative;
        ++node.batch_count;
        for (std::size_t li : node.input_links) {
          Link& link = links_[li];
          link.accumulated_gradient +=
              node.input_derivative * nodes_[link.source].output;
          ++link.batch_count;
        }
      }
      if (l == 1) break;
      for (std::size_t i = layer_begin(l - 1); i < layer_end(l - 1); ++i)
        nodes_[i].output_derivative = 0.0;
      for (std::size_t i = layer_begin(l); i < layer_end(l); ++i) {
        const Node& node = nodes_[i];
        for (std::size_t li : node.input_links)
          nodes_[links_[li].source].output_derivative +=
              links_[li].weight * node.input_derivative;
      }
    }
  }

  /// Applies the batch-averaged gradient step, then the weight penalty.
  /// L1 is a proximal shrink that lands exactly on 0.0 when it would cross
  /// zero. Biases are never regularized. Entries with batch_count == 0 are
  /// left alone.
  void apply_update(double learning_rate, Regularization reg, double reg_rate) {
    for (Link& link : links_) {
      if (link.batch_count == 0) continue;
      double w = link.weight -
                 learning_rate * (link.accumulated_gradient / link.batch_count);
      switch (reg) {
        case Regularization::none:
          break;
        case Regularization::l2:
          w -= learning_rate * reg_rate * w;
          break;
        case Regularization::l1: {
          const double shrink = learning_rate * reg_rate;
          if (shrink > 0.0)
            w = std::abs(w) <= shrink ? 0.0 : w - std::copysign(shrink, w);
          break;
        }
      }
      link.weight = w;
      link.accumulated_gradient = 0.0;
      link.batch_count = 0;
    }
    for (std::size_t i = layer_begin(1); i < nodes_.size(); ++i) {
      Node& node = nodes_[i];
      if (node.batch_count == 0) continue;
      node.bias -= learning_rate * (node.bias_gradient / node.batch_count);
      node.bias_gradient = 0.0;
      node.batch_count = 0;
    }
  }

  friend bool operator==(const Network&, const Network&) = default;

 private:
  std::vector<Node> nodes_;
  std::vector<Link> links_;
  std::vector<std::size_t> layer_begin_;
  std::vector<FeatureId> features_;
  Activation hidden_activation_ = Activation::tanh;
  Activation output_activation_ = Activation::tanh;
  Problem problem_ = Problem::classification;
};

}  // namespace playground
