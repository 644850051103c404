#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "playground/config.hpp"
#include "playground/format.hpp"

namespace playground {

/// Raised for pairs without `=`; the only input decode() refuses.
class CodecError : public std::runtime_error {
 public:
  CodecError(std::string pair)
      : std::runtime_error("malformed state pair (missing '='): '" + pair + "'"),
        pair_(std::move(pair)) {}
  const std::string& pair() const { return pair_; }

 private:
  std::string pair_;
};

struct DecodedState {
  Config config;
  std::vector<std::string> ui_hidden;
  std::vector<std::string> diagnostics;
};

inline constexpr std::array<std::string_view, 13> kStateKeys = {
    "problem", "ds", "noise", "split", "bs", "lr", "act",
    "reg",     "rr", "layers", "feat", "seed", "ui"};

inline bool is_state_key(std::string_view key) {
  return std::find(kStateKeys.begin(), kStateKeys.end(), key) != kStateKeys.end();
}

namespace detail {

template <typename T, typename F>
std::string join(const std::vector<T>& items, F&& to_text) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += ',';
    out += to_text(items[i]);
  }
  return out;
}

inline std::vector<std::string_view> split_on(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace detail

/// Canonical state string: every key, fixed order, shortest round-trip floats.
inline std::string encode(const Config& c, const std::vector<std::string>& ui_hidden = {}) {
  std::string s = "#problem=";
  s += c.problem == Problem::classification ? "class" : "reg";
  s += "&ds=";
  s += to_string(c.dataset);
  s += "&noise=" + std::to_string(c.noise);
  s += "&split=" + std::to_string(c.train_percent);
  s += "&bs=" + std::to_string(c.batch_size);
  s += "&lr=" + format_double(c.learning_rate);
  s += "&act=";
  s += to_string(c.hidden_activation);
  s += "&reg=";
  s += to_string(c.reg);
  s += "&rr=" + format_double(c.reg_rate);
  s += "&layers=" + detail::join(c.hidden_layer_sizes, [](int n) { return std::to_string(n); });
  s += "&feat=" + detail::join(c.enabled_features,
                               [](FeatureId f) { return std::string(to_string(f)); });
  s += "&seed=" + std::to_string(c.seed);
  s += "&ui=" + detail::join(ui_hidden, [](const std::string& id) { return id; });
  return s;
}

/// Parses a state string, leading `#` optional. Missing keys keep defaults;
/// unknown keys and unusable or out-of-range values are dropped or clamped,
/// each with a diagnostic. Throws CodecError only for a pair without `=`.
inline DecodedState decode(std::string_view text) {
  DecodedState out;
  Config& c = out.config;
  auto note = [&](std::string msg) { out.diagnostics.push_back(std::move(msg)); };

  if (!text.empty() && text.front() == '#') text.remove_prefix(1);

  bool saw_problem = false;
  bool saw_dataset = false;

  auto clamp_int = [&](std::string_view key, std::string_view value, long long lo,
                       long long hi) -> std::optional<long long> {
    const auto parsed = parse_integer(value);
    if (!parsed) {
      note("ignored non-integer value for '" + std::string(key) + "': '" +
           std::string(value) + "'");
      return std::nullopt;
    }
    const long long clamped = std::clamp(*parsed, lo, hi);
    if (clamped != *parsed)
      note("clamped '" + std::string(key) + "' from " + std::string(value) + " to " +
           std::to_string(clamped));
    return clamped;
  };

  for (std::string_view pair : detail::split_on(text, '&')) {
    if (pair.empty()) continue;
    const std::size_t eq = pair.find('=');
    if (eq == std::string_view::npos) throw CodecError(std::string(pair));
    const std::string_view key = pair.substr(0, eq);
    const std::string_view value = pair.substr(eq + 1);
    auto bad_value = [&] {
      note("ignored unrecognized value for '" + std::string(key) + "': '" +
           std::string(value) + "'");
    };

    if (key == "problem") {
      if (value == "class") c.problem = Problem::classification, saw_problem = true;
      else if (value == "reg") c.problem = Problem::regression, saw_problem = true;
      else bad_value();
    } else if (key == "ds") {
      if (auto kind = dataset_from_string(value)) c.dataset = *kind, saw_dataset = true;
      else bad_value();
    } else if (key == "noise") {
      if (auto v = clamp_int(key, value, kMinNoise, kMaxNoise)) c.noise = int(*v);
    } else if (key == "split") {
      if (auto v = clamp_int(key, value, kMinTrainPercent, kMaxTrainPercent))
        c.train_percent = int(*v);
    } else if (key == "bs") {
      if (auto v = clamp_int(key, value, kMinBatchSize, kMaxBatchSize)) c.batch_size = int(*v);
    } else if (key == "seed") {
      if (auto v = clamp_int(key, value, 0, 0xFFFFFFFFLL)) c.seed = std::uint32_t(*v);
    } else if (key == "lr") {
      const auto v = parse_double(value);
      if (!v || !std::isfinite(*v)) {
        bad_value();
      } else if (*v <= 0.0) {
        c.learning_rate = kMinLearningRate;
        note("clamped 'lr' from " + std::string(value) + " to " +
             format_double(kMinLearningRate));
      } else {
        c.learning_rate = *v;
      }
    } else if (key == "rr") {
      const auto v = parse_double(value);
      if (!v || !std::isfinite(*v)) {
        bad_value();
      } else if (*v < 0.0) {
        c.reg_rate = 0.0;
        note("clamped 'rr' from " + std::string(value) + " to 0");
      } else {
        c.reg_rate = *v;
      }
    } else if (key == "act") {
      if (value == "tanh") c.hidden_activation = Activation::tanh;
      else if (value == "relu") c.hidden_activation = Activation::relu;
      else if (value == "sigmoid") c.hidden_activation = Activation::sigmoid;
      else if (value == "linear") c.hidden_activation = Activation::linear;
      else bad_value();
    } else if (key == "reg") {
      if (value == "none") c.reg = Regularization::none;
      else if (value == "l1") c.reg = Regularization::l1;
      else if (value == "l2") c.reg = Regularization::l2;
      else bad_value();
    } else if (key == "layers") {
      std::vector<int> sizes;
      if (!value.empty()) {
        for (std::string_view item : detail::split_on(value, ',')) {
          if (auto v = clamp_int("layers", item, 1, kMaxUnitsPerLayer)) sizes.push_back(int(*v));
        }
      }
      if (sizes.size() > kMaxHiddenLayers) {
        note("truncated 'layers' to 6 hidden layers");
        sizes.resize(kMaxHiddenLayers);
      }
      c.hidden_layer_sizes = std::move(sizes);
    } else if (key == "feat") {
      std::vector<FeatureId> features;
      for (std::string_view item : detail::split_on(value, ',')) {
        if (item.empty()) continue;
        if (auto f = feature_from_string(item)) features.push_back(*f);
        else note("ignored unknown feature '" + std::string(item) + "'");
      }
      features = canonicalize(std::move(features));
      if (features.empty()) {
        note("no usable features in 'feat'; using defaults");
        features = Config{}.enabled_features;
      }
      c.enabled_features = std::move(features);
    } else if (key == "ui") {
      out.ui_hidden.clear();
      for (std::string_view item : detail::split_on(value, ','))
        if (!item.empty()) out.ui_hidden.emplace_back(item);
    } else {
      note("ignored unknown key '" + std::string(key) + "'");
    }
  }

  if (is_regression(c.dataset) != (c.problem == Problem::regression)) {
    if (saw_dataset && !saw_problem) {
      c.problem = is_regression(c.dataset) ? Problem::regression : Problem::classification;
      note("problem type set to match dataset '" + std::string(to_string(c.dataset)) + "'");
    } else {
      c.dataset = c.problem == Problem::regression ? DatasetKind::plane : DatasetKind::gauss;
      note("dataset replaced by '" + std::string(to_string(c.dataset)) +
           "' to match the problem type");
    }
  }
  return out;
}

}  // namespace playground
