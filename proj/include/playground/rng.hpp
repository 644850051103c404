#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace playground {

/// xorshift32 generator. Every random quantity in the engine (datasets,
/// shuffles, weight init) is drawn from one of these, so a seed fully
/// determines a run on any platform.
class Rng {
 public:
  static constexpr std::uint32_t kZeroSeedReplacement = 0x9E3779B9u;

  explicit Rng(std::uint32_t seed = 1) noexcept
      : state_(seed == 0 ? kZeroSeedReplacement : seed) {}

  std::uint32_t state() const noexcept { return state_; }

  /// One draw. Uniform in [0, 1).
  double next_float() noexcept {
    std::uint32_t x = state_;
    x ^= x << 13;
    x ^= x >> 17;
    x ^= x << 5;
    state_ = x;
    return static_cast<double>(x) / 4294967296.0;
  }

  /// One draw. Uniform in [lo, hi).
  double uniform(double lo, double hi) noexcept {
    return lo + (hi - lo) * next_float();
  }

  /// Box-Muller, cosine branch. Always two draws, even for stddev == 0.
  double next_gaussian(double mean, double stddev) noexcept {
    const double u1 = std::max(next_float(), 1.0 / 4294967296.0);
    const double u2 = next_float();
    if (stddev == 0.0) return mean;
    return mean + stddev * box_muller(u1, u2);
  }

  /// Standard normal from two uniforms; u1 must be in (0, 1].
  static double box_muller(double u1, double u2) noexcept {
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  friend bool operator==(const Rng&, const Rng&) = default;

 private:
  std::uint32_t state_;
};

}  // namespace playground
