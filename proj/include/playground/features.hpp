#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace playground {

/// Input feature palette, declared in canonical order.
enum class FeatureId { x1, x2, x1sq, x2sq, x1x2, sinx1, sinx2 };

inline constexpr std::array<FeatureId, 7> kAllFeatures = {
    FeatureId::x1,   FeatureId::x2,    FeatureId::x1sq, FeatureId::x2sq,
    FeatureId::x1x2, FeatureId::sinx1, FeatureId::sinx2};

constexpr std::string_view to_string(FeatureId id) {
  switch (id) {
    case FeatureId::x1: return "x1";
    case FeatureId::x2: return "x2";
    case FeatureId::x1sq: return "x1sq";
    case FeatureId::x2sq: return "x2sq";
    case FeatureId::x1x2: return "x1x2";
    case FeatureId::sinx1: return "sinx1";
    case FeatureId::sinx2: return "sinx2";
  }
  return "?";
}

inline std::optional<FeatureId> feature_from_string(std::string_view name) {
  for (FeatureId id : kAllFeatures)
    if (to_string(id) == name) return id;
  return std::nullopt;
}

inline double evaluate_feature(FeatureId id, double x1, double x2) {
  switch (id) {
    case FeatureId::x1: return x1;
    case FeatureId::x2: return x2;
    case FeatureId::x1sq: return x1 * x1;
    case FeatureId::x2sq: return x2 * x2;
    case FeatureId::x1x2: return x1 * x2;
    case FeatureId::sinx1: return std::sin(std::numbers::pi * x1);
    case FeatureId::sinx2: return std::sin(std::numbers::pi * x2);
  }
  return 0.0;
}

/// True when `features` is non-empty, duplicate-free and in canonical order.
inline bool is_canonical_feature_set(std::span<const FeatureId> features) {
  if (features.empty()) return false;
  for (std::size_t i = 1; i < features.size(); ++i)
    if (!(features[i - 1] < features[i])) return false;
  return true;
}

/// Sorts into canonical order and drops duplicates.
inline std::vector<FeatureId> canonicalize(std::vector<FeatureId> features) {
  std::sort(features.begin(), features.end());
  features.erase(std::unique(features.begin(), features.end()), features.end());
  return features;
}

inline void feature_vector(std::span<const FeatureId> enabled, double x1,
                           double x2, std::span<double> out) {
  for (std::size_t i = 0; i < enabled.size(); ++i)
    out[i] = evaluate_feature(enabled[i], x1, x2);
}

inline std::vector<double> feature_vector(std::span<const FeatureId> enabled,
                                          double x1, double x2) {
  std::vector<double> out(enabled.size());
  feature_vector(enabled, x1, x2, out);
  return out;
}

}  // namespace playground
