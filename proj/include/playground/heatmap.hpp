#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "playground/features.hpp"
#include "playground/network.hpp"

namespace playground {

/// A unit's raw response sampled at cell centers over [-1,1]².
/// Row-major; row 0 is the top edge (x2 = +1), column 0 the left (x1 = -1).
struct HeatmapGrid {
  int resolution = 0;
  std::vector<double> values;

  double at(int row, int col) const {
    return values[static_cast<std::size_t>(row) * resolution + col];
  }

  friend bool operator==(const HeatmapGrid&, const HeatmapGrid&) = default;
};

inline double cell_x1(int col, int resolution) {
  return -1.0 + 2.0 * (col + 0.5) / resolution;
}

inline double cell_x2(int row, int resolution) {
  return 1.0 - 2.0 * (row + 0.5) / resolution;
}

/// Samples every node of `net` in one sweep; result is indexed like nodes().
inline std::vector<HeatmapGrid> sample_all_units(const Network& net, int resolution) {
  if (resolution < 2) throw std::invalid_argument("heatmap resolution must be at least 2");
  const std::size_t cells = static_cast<std::size_t>(resolution) * resolution;
  std::vector<HeatmapGrid> grids(net.nodes().size());
  for (HeatmapGrid& g : grids) {
    g.resolution = resolution;
    g.values.resize(cells);
  }
  std::vector<double> feats(net.input_width());
  std::vector<double> outputs(net.nodes().size());
  for (int row = 0; row < resolution; ++row) {
    const double x2 = cell_x2(row, resolution);
    for (int col = 0; col < resolution; ++col) {
      feature_vector(net.features(), cell_x1(col, resolution), x2, feats);
      net.evaluate(feats, outputs);
      const std::size_t cell = static_cast<std::size_t>(row) * resolution + col;
      for (std::size_t n = 0; n < outputs.size(); ++n) grids[n].values[cell] = outputs[n];
    }
  }
  return grids;
}

inline HeatmapGrid sample_unit(const Network& net, std::string_view unit_id, int resolution) {
  const auto index = net.find_node(unit_id);
  if (!index) throw std::invalid_argument("unknown unit id: " + std::string(unit_id));
  if (resolution < 2) throw std::invalid_argument("heatmap resolution must be at least 2");
  HeatmapGrid grid{resolution, {}};
  grid.values.reserve(static_cast<std::size_t>(resolution) * resolution);
  std::vector<double> feats(net.input_width());
  std::vector<double> outputs(net.nodes().size());
  for (int row = 0; row < resolution; ++row) {
    for (int col = 0; col < resolution; ++col) {
      feature_vector(net.features(), cell_x1(col, resolution), cell_x2(row, resolution), feats);
      net.evaluate(feats, outputs);
      grid.values.push_back(outputs[*index]);
    }
  }
  return grid;
}

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

inline constexpr Rgb kNegativeColor{245, 147, 34};
inline constexpr Rgb kNeutralColor{232, 232, 232};
inline constexpr Rgb kPositiveColor{8, 119, 189};

/// Diverging orange/gray/blue palette. Values are clipped to [-1,1]; NaN maps
/// to neutral.
inline Rgb colorize(double v) {
  if (std::isnan(v)) return kNeutralColor;
  v = std::clamp(v, -1.0, 1.0);
  const Rgb& far = v < 0.0 ? kNegativeColor : kPositiveColor;
  const double t = std::abs(v);
  auto lerp = [t](std::uint8_t from, std::uint8_t to) {
    return static_cast<std::uint8_t>(std::floor(from + t * (to - from) + 0.5));
  };
  return {lerp(kNeutralColor.r, far.r), lerp(kNeutralColor.g, far.g),
          lerp(kNeutralColor.b, far.b)};
}

inline std::vector<Rgb> colorize(const HeatmapGrid& grid) {
  std::vector<Rgb> out;
  out.reserve(grid.values.size());
  for (double v : grid.values) out.push_back(colorize(v));
  return out;
}

/// Plain-text PPM (P3), one image row per line.
inline void write_ppm(std::ostream& os, const HeatmapGrid& grid) {
  const std::vector<Rgb> pixels = colorize(grid);
  os << "P3\n" << grid.resolution << ' ' << grid.resolution << "\n255\n";
  for (int row = 0; row < grid.resolution; ++row) {
    for (int col = 0; col < grid.resolution; ++col) {
      const Rgb& p = pixels[static_cast<std::size_t>(row) * grid.resolution + col];
      if (col > 0) os << ' ';
      os << int(p.r) << ' ' << int(p.g) << ' ' << int(p.b);
    }
    os << '\n';
  }
}

}  // namespace playground
