#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "playground/config.hpp"
#include "playground/frame.hpp"
#include "playground/heatmap.hpp"
#include "playground/state_codec.hpp"
#include "playground/trainer.hpp"

namespace playground {

namespace command {
struct Play {};
struct Pause {};
struct Step {};
struct Reset {};
struct SetConfig {
  std::string state;
};
struct SetParam {
  std::string key;
  std::string value;
};
struct GetFrame {
  int heatmap_resolution = 0;
};
}  // namespace command

using Command = std::variant<command::Play, command::Pause, command::Step, command::Reset,
                             command::SetConfig, command::SetParam, command::GetFrame>;

inline constexpr int kMaxHeatmapResolution = 512;

struct SessionOptions {
  std::chrono::milliseconds tick{50};
};

/// One training session: owns the config and trainer state and turns
/// commands into frames. Not thread-safe; callers serialize access.
class Session {
 public:
  /// Throws CodecError if `state_string` has a malformed pair.
  explicit Session(std::string_view state_string, SessionOptions options = {})
      : options_(options) {
    DecodedState decoded = decode(state_string);
    config_ = std::move(decoded.config);
    ui_hidden_ = std::move(decoded.ui_hidden);
    notices_ = std::move(decoded.diagnostics);
    state_ = make_trainer_state(config_);
  }

  const Config& config() const { return config_; }
  const TrainerState& trainer() const { return state_; }
  const std::vector<std::string>& ui_hidden() const { return ui_hidden_; }
  const SessionOptions& options() const { return options_; }
  bool running() const { return state_.running; }
  std::string state_string() const { return encode(config_, ui_hidden_); }

  Frame handle(const Command& cmd) {
    return std::visit([this](const auto& c) { return apply(c); }, cmd);
  }

  /// Scheduler hook: runs one epoch while playing.
  std::optional<Frame> tick() {
    if (!state_.running) return std::nullopt;
    run_epoch(state_, config_);
    return frame();
  }

  Frame frame(int heatmap_resolution = 0) {
    Frame f;
    f.epoch = state_.epoch;
    f.running = state_.running;
    f.state = state_string();
    f.weights = state_.net.weights();
    f.biases = state_.net.biases();
    const auto& series = state_.loss_series;
    const std::size_t first = series.size() > kLossTail ? series.size() - kLossTail : 0;
    f.loss.assign(series.begin() + static_cast<std::ptrdiff_t>(first), series.end());
    if (heatmap_resolution > 0) {
      std::vector<HeatmapGrid> grids = sample_all_units(state_.net, heatmap_resolution);
      const auto nodes = state_.net.nodes();
      for (std::size_t i = 0; i < nodes.size(); ++i)
        f.heatmaps.emplace_back(nodes[i].id, std::move(grids[i].values));
    }
    std::vector<bool> is_train(state_.dataset.points.size(), false);
    for (std::size_t i : state_.dataset.train_indices) is_train[i] = true;
    for (std::size_t i = 0; i < state_.dataset.points.size(); ++i) {
      const Point& p = state_.dataset.points[i];
      f.data.push_back({p.x1, p.x2, p.label, is_train[i]});
    }
    f.notices = std::exchange(notices_, {});
    return f;
  }

 private:
  Frame error_frame(std::string message) {
    Frame f = frame();
    f.error = std::move(message);
    return f;
  }

  Frame apply(const command::Play&) {
    state_.running = true;
    return frame();
  }
  Frame apply(const command::Pause&) {
    state_.running = false;
    return frame();
  }
  Frame apply(const command::Step&) {
    run_epoch(state_, config_);
    return frame();
  }
  Frame apply(const command::Reset&) {
    const bool running = state_.running;
    state_ = make_trainer_state(config_);
    state_.running = running;
    return frame();
  }
  Frame apply(const command::SetConfig& c) { return set_state(c.state); }
  Frame apply(const command::SetParam& c) {
    if (!is_state_key(c.key)) return error_frame("unknown parameter '" + c.key + "'");
    if (c.value.find_first_of("&#") != std::string::npos)
      return error_frame("parameter value may not contain '&' or '#'");
    return set_state(state_string() + "&" + c.key + "=" + c.value);
  }
  Frame apply(const command::GetFrame& c) {
    if (c.heatmap_resolution < 0 || c.heatmap_resolution == 1 ||
        c.heatmap_resolution > kMaxHeatmapResolution)
      return error_frame("heatmap resolution must be 0 or in [2, 512]");
    return frame(c.heatmap_resolution);
  }

  Frame set_state(std::string_view text) {
    DecodedState decoded;
    try {
      decoded = decode(text);
      apply_config_change(state_, config_, decoded.config);
    } catch (const CodecError& e) {
      return error_frame(e.what());
    } catch (const InvalidConfig& e) {
      return error_frame(e.what());
    }
    config_ = std::move(decoded.config);
    ui_hidden_ = std::move(decoded.ui_hidden);
    notices_ = std::move(decoded.diagnostics);
    return frame();
  }

  SessionOptions options_;
  Config config_;
  std::vector<std::string> ui_hidden_;
  std::vector<std::string> notices_;
  TrainerState state_;
};

}  // namespace playground
