#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "playground/rng.hpp"

namespace playground {

enum class DatasetKind { gauss, xor_, circle, spiral, plane, gaussreg };

inline constexpr std::array<DatasetKind, 6> kAllDatasetKinds = {
    DatasetKind::gauss,  DatasetKind::xor_,  DatasetKind::circle,
    DatasetKind::spiral, DatasetKind::plane, DatasetKind::gaussreg};

constexpr std::string_view to_string(DatasetKind kind) {
  switch (kind) {
    case DatasetKind::gauss: return "gauss";
    case DatasetKind::xor_: return "xor";
    case DatasetKind::circle: return "circle";
    case DatasetKind::spiral: return "spiral";
    case DatasetKind::plane: return "plane";
    case DatasetKind::gaussreg: return "gaussreg";
  }
  return "?";
}

inline std::optional<DatasetKind> dataset_from_string(std::string_view name) {
  for (DatasetKind kind : kAllDatasetKinds)
    if (to_string(kind) == name) return kind;
  return std::nullopt;
}

constexpr bool is_regression(DatasetKind kind) {
  return kind == DatasetKind::plane || kind == DatasetKind::gaussreg;
}

inline constexpr int kDefaultPointCount = 500;

struct Point {
  double x1 = 0.0;
  double x2 = 0.0;
  double label = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

struct Dataset {
  DatasetKind kind = DatasetKind::gauss;
  std::vector<Point> points;
  std::vector<std::size_t> train_indices;
  std::vector<std::size_t> test_indices;

  std::vector<Point> train_points() const { return select(train_indices); }
  std::vector<Point> test_points() const { return select(test_indices); }

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  std::vector<Point> select(const std::vector<std::size_t>& indices) const {
    std::vector<Point> out;
    out.reserve(indices.size());
    for (std::size_t i : indices) out.push_back(points[i]);
    return out;
  }
};

namespace detail {

inline double clip_unit(double v) { return std::clamp(v, -1.0, 1.0); }

inline double push_off_axis(double c) {
  return clip_unit(c + (c >= 0.0 ? 0.05 : -0.05));
}

}  // namespace detail

/// Generates `n` points of the given kind, drawing from `rng`.
///
/// Draws per point (m = n/2): gauss 4, xor 2, circle 2, spiral 0, plane 2,
/// gaussreg 2; then 2 jitter draws per point for every noise level, so the
/// draw count depends only on (kind, n).
///
/// xor draws each class's points uniformly from its own pair of quadrants so
/// the label split is exactly m/m like the other classification kinds.
inline std::vector<Point> generate(DatasetKind kind, int n, int noise_percent,
                                   Rng& rng) {
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("dataset size must be even and at least 2");
  if (noise_percent < 0 || noise_percent > 50)
    throw std::invalid_argument("noise must be in [0, 50]");
  const int m = n / 2;
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  std::vector<Point> points;
  points.reserve(static_cast<std::size_t>(n));

  switch (kind) {
    case DatasetKind::gauss: {
      constexpr double kSigma = 0.17;
      for (const double sign : {1.0, -1.0}) {
        for (int i = 0; i < m; ++i) {
          const double x1 = rng.next_gaussian(0.5 * sign, kSigma);
          const double x2 = rng.next_gaussian(0.5 * sign, kSigma);
          points.push_back({detail::clip_unit(x1), detail::clip_unit(x2), sign});
        }
      }
      break;
    }
    case DatasetKind::xor_: {
      for (const double sign : {1.0, -1.0}) {
        for (int i = 0; i < m; ++i) {
          const double x1 = rng.uniform(-1.0, 1.0);
          const double mag = std::abs(rng.uniform(-1.0, 1.0));
          const double x2 = (x1 >= 0.0) == (sign > 0.0) ? mag : -mag;
          const double p1 = detail::push_off_axis(x1);
          const double p2 = detail::push_off_axis(x2);
          points.push_back({p1, p2, p1 * p2 > 0.0 ? 1.0 : -1.0});
        }
      }
      break;
    }
    case DatasetKind::circle: {
      auto ring = [&](double r_lo, double r_hi, double label) {
        for (int i = 0; i < m; ++i) {
          const double r = rng.uniform(r_lo, r_hi);
          const double angle = rng.uniform(0.0, kTwoPi);
          points.push_back({r * std::sin(angle), r * std::cos(angle), label});
        }
      };
      ring(0.0, 0.4, 1.0);
      ring(0.75, 1.0, -1.0);
      break;
    }
    case DatasetKind::spiral: {
      for (const auto& [phase, label] :
           {std::pair{0.0, 1.0}, std::pair{std::numbers::pi, -1.0}}) {
        for (int i = 0; i < m; ++i) {
          const double r = static_cast<double>(i) / m;
          const double t = 1.75 * r * kTwoPi + phase;
          points.push_back({r * std::sin(t), r * std::cos(t), label});
        }
      }
      break;
    }
    case DatasetKind::plane: {
      for (int i = 0; i < n; ++i) {
        const double x1 = rng.uniform(-1.0, 1.0);
        const double x2 = rng.uniform(-1.0, 1.0);
        points.push_back({x1, x2, detail::clip_unit((x1 + x2) / 2.0)});
      }
      break;
    }
    case DatasetKind::gaussreg: {
      constexpr double kVar2 = 2.0 * 0.3 * 0.3;
      for (int i = 0; i < n; ++i) {
        const double x1 = rng.uniform(-1.0, 1.0);
        const double x2 = rng.uniform(-1.0, 1.0);
        const double dp = (x1 - 0.5) * (x1 - 0.5) + (x2 - 0.5) * (x2 - 0.5);
        const double dm = (x1 + 0.5) * (x1 + 0.5) + (x2 + 0.5) * (x2 + 0.5);
        const double label = std::exp(-dp / kVar2) - std::exp(-dm / kVar2);
        points.push_back({x1, x2, detail::clip_unit(label)});
      }
      break;
    }
  }

  const double amplitude = noise_percent / 100.0;
  for (Point& p : points) {
    const double j1 = rng.uniform(-amplitude, amplitude);
    const double j2 = rng.uniform(-amplitude, amplitude);
    p.x1 = detail::clip_unit(p.x1 + j1);
    p.x2 = detail::clip_unit(p.x2 + j2);
  }
  return points;
}

inline std::vector<Point> generate(DatasetKind kind, int n, int noise_percent,
                                   std::uint32_t seed) {
  Rng rng(seed);
  return generate(kind, n, noise_percent, rng);
}

/// In-place Fisher-Yates, n - 1 draws.
template <typename T>
void shuffle(std::vector<T>& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.next_float() * static_cast<double>(i));
    std::swap(items[i - 1], items[j]);
  }
}

/// Shuffles point indices and hands the first ceil(n * train_percent / 100)
/// to the training set.
inline std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split(
    std::size_t point_count, int train_percent, Rng& rng) {
  std::vector<std::size_t> order(point_count);
  for (std::size_t i = 0; i < point_count; ++i) order[i] = i;
  shuffle(order, rng);
  const std::size_t train_count =
      (point_count * static_cast<std::size_t>(train_percent) + 99) / 100;
  std::vector<std::size_t> train(order.begin(),
                                 order.begin() + static_cast<std::ptrdiff_t>(train_count));
  std::vector<std::size_t> test(order.begin() + static_cast<std::ptrdiff_t>(train_count),
                                order.end());
  return {std::move(train), std::move(test)};
}

}  // namespace playground
