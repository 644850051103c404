#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace playground {

struct Preset {
  std::string_view name;
  std::string_view state;
};

/// Scenarios matching the four reference screenshots: a ring learned by one
/// hidden layer, a heavily featured spiral attempt, a redundant deep stack,
/// and a run wrecked by the largest learning rate.
inline constexpr std::array<Preset, 4> kPresets = {{
    {"fig1",
     "#problem=class&ds=circle&noise=0&split=50&bs=10&lr=0.03&act=tanh&reg=none&rr=0"
     "&layers=4&feat=x1,x2&seed=42&ui="},
    {"fig2",
     "#problem=class&ds=spiral&noise=0&split=50&bs=10&lr=0.03&act=tanh&reg=none&rr=0"
     "&layers=8,8,6&feat=x1,x2,x1sq,x2sq,x1x2,sinx1,sinx2&seed=42&ui="},
    {"fig3",
     "#problem=class&ds=circle&noise=0&split=50&bs=10&lr=0.03&act=tanh&reg=none&rr=0"
     "&layers=8,8,8,8&feat=x1,x2,x1sq,x2sq&seed=42&ui="},
    {"fig4",
     "#problem=class&ds=circle&noise=0&split=50&bs=10&lr=10&act=tanh&reg=none&rr=0"
     "&layers=8&feat=x1,x2&seed=42&ui="},
}};

inline std::optional<std::string_view> find_preset(std::string_view name) {
  for (const Preset& p : kPresets)
    if (p.name == name) return p.state;
  return std::nullopt;
}

}  // namespace playground
