#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "playground/format.hpp"
#include "playground/trainer.hpp"

namespace playground {

struct FramePoint {
  double x1 = 0.0;
  double x2 = 0.0;
  double label = 0.0;
  bool is_train = false;

  friend bool operator==(const FramePoint&, const FramePoint&) = default;
};

/// Snapshot of a session, self-contained enough to draw the whole UI when
/// paired with the state string it echoes.
struct Frame {
  int epoch = 0;
  bool running = false;
  std::string state;
  std::vector<double> weights;  // build order
  std::vector<double> biases;   // non-input nodes, node order
  std::vector<LossEntry> loss;  // last kLossTail entries
  std::vector<std::pair<std::string, std::vector<double>>> heatmaps;  // node order
  std::vector<FramePoint> data;
  std::optional<std::string> error;
  std::vector<std::string> notices;

  friend bool operator==(const Frame&, const Frame&) = default;
};

inline constexpr std::size_t kLossTail = 200;

namespace detail {

inline void append_number(std::string& out, double v) {
  if (std::isfinite(v)) out += format_double(v);
  else out += "null";
}

inline void append_string(std::string& out, std::string_view s) {
  out += nlohmann::json(std::string(s)).dump();
}

inline void append_array(std::string& out, const std::vector<double>& values) {
  out += '[';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    append_number(out, values[i]);
  }
  out += ']';
}

template <typename Json>
double number_or_nan(const Json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  return j.template get<double>();
}

}  // namespace detail

/// One-line JSON document; fields in a fixed order, numbers as shortest
/// round-trip decimals, non-finite numbers as null. `error` and `notices`
/// are appended only when present.
inline std::string serialize_frame(const Frame& f) {
  std::string out;
  out.reserve(256 + 24 * (f.weights.size() + f.data.size() * 4));
  out += "{\"epoch\":" + std::to_string(f.epoch);
  out += ",\"running\":";
  out += f.running ? "true" : "false";
  out += ",\"state\":";
  detail::append_string(out, f.state);
  out += ",\"weights\":";
  detail::append_array(out, f.weights);
  out += ",\"biases\":";
  detail::append_array(out, f.biases);
  out += ",\"loss\":[";
  for (std::size_t i = 0; i < f.loss.size(); ++i) {
    if (i > 0) out += ',';
    out += '[' + std::to_string(f.loss[i].epoch) + ',';
    detail::append_number(out, f.loss[i].train_loss);
    out += ',';
    detail::append_number(out, f.loss[i].test_loss);
    out += ']';
  }
  out += "],\"heatmaps\":{";
  for (std::size_t i = 0; i < f.heatmaps.size(); ++i) {
    if (i > 0) out += ',';
    detail::append_string(out, f.heatmaps[i].first);
    out += ':';
    detail::append_array(out, f.heatmaps[i].second);
  }
  out += "},\"data\":[";
  for (std::size_t i = 0; i < f.data.size(); ++i) {
    const FramePoint& p = f.data[i];
    if (i > 0) out += ',';
    out += '[';
    detail::append_number(out, p.x1);
    out += ',';
    detail::append_number(out, p.x2);
    out += ',';
    detail::append_number(out, p.label);
    out += p.is_train ? ",true]" : ",false]";
  }
  out += ']';
  if (f.error) {
    out += ",\"error\":";
    detail::append_string(out, *f.error);
  }
  if (!f.notices.empty()) {
    out += ",\"notices\":[";
    for (std::size_t i = 0; i < f.notices.size(); ++i) {
      if (i > 0) out += ',';
      detail::append_string(out, f.notices[i]);
    }
    out += ']';
  }
  out += '}';
  return out;
}

/// Inverse of serialize_frame. Throws nlohmann::json::exception on bad input.
inline Frame parse_frame(std::string_view text) {
  // ordered_json keeps heatmap keys in document (node) order.
  const auto j = nlohmann::ordered_json::parse(text);
  Frame f;
  f.epoch = j.at("epoch").get<int>();
  f.running = j.at("running").get<bool>();
  f.state = j.at("state").get<std::string>();
  for (const auto& w : j.at("weights")) f.weights.push_back(detail::number_or_nan(w));
  for (const auto& b : j.at("biases")) f.biases.push_back(detail::number_or_nan(b));
  for (const auto& e : j.at("loss"))
    f.loss.push_back({e.at(0).get<int>(), detail::number_or_nan(e.at(1)),
                      detail::number_or_nan(e.at(2))});
  for (const auto& [id, values] : j.at("heatmaps").items()) {
    std::vector<double> grid;
    grid.reserve(values.size());
    for (const auto& v : values) grid.push_back(detail::number_or_nan(v));
    f.heatmaps.emplace_back(id, std::move(grid));
  }
  for (const auto& p : j.at("data"))
    f.data.push_back({detail::number_or_nan(p.at(0)), detail::number_or_nan(p.at(1)),
                      detail::number_or_nan(p.at(2)), p.at(3).get<bool>()});
  if (j.contains("error")) f.error = j.at("error").get<std::string>();
  if (j.contains("notices"))
    for (const auto& n : j.at("notices")) f.notices.push_back(n.get<std::string>());
  return f;
}

}  // namespace playground
