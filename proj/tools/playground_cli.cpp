// Headless runner and pipe server for the playground engine.
//
//   playground --preset fig1 --epochs 300 --out run1 --emit losses,heatmaps
//   playground --state '#ds=spiral&layers=8,8' --serve   (JSON lines on stdio)

#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "playground/playground.hpp"

namespace {

std::set<playground::Emit> parse_emit(const std::string& list) {
  std::set<playground::Emit> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (item == "losses") out.insert(playground::Emit::losses);
    else if (item == "heatmaps") out.insert(playground::Emit::heatmaps);
    else if (item == "final_state") out.insert(playground::Emit::final_state);
    else if (item == "frames") out.insert(playground::Emit::frames);
    else throw CLI::ValidationError("--emit", "unknown output '" + item + "'");
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Train small dense networks on synthetic 2-D data"};

  std::string state;
  std::string preset;
  std::string emit = "losses,final_state";
  int tick_ms = 50;
  bool serve = false;
  bool list_presets = false;
  playground::RunSpec spec;

  auto* state_opt = app.add_option("--state", state, "State string, e.g. '#ds=xor&layers=4'");
  app.add_option("--preset", preset, "Named scenario: fig1, fig2, fig3, fig4")
      ->excludes(state_opt);
  app.add_option("--epochs", spec.epochs, "Epochs to train")
      ->check(CLI::Range(0, playground::kMaxRunEpochs));
  app.add_option("--out", spec.out_dir, "Output directory");
  app.add_option("--heatmap-res", spec.heatmap_resolution, "Heatmap resolution for unit_<id>.ppm")
      ->check(CLI::Range(2, playground::kMaxHeatmapResolution));
  app.add_option("--emit", emit, "Comma list of losses,heatmaps,final_state,frames");
  app.add_flag("--serve", serve, "Speak the command/frame protocol on stdin/stdout");
  app.add_option("--tick-ms", tick_ms, "Epoch period while playing (--serve)")
      ->check(CLI::Range(1, 60000));
  app.add_flag("--list-presets", list_presets, "Print preset names and state strings");

  CLI11_PARSE(app, argc, argv);

  if (list_presets) {
    for (const auto& p : playground::kPresets) std::cout << p.name << ' ' << p.state << '\n';
    return playground::kExitOk;
  }

  if (!preset.empty()) {
    const auto found = playground::find_preset(preset);
    if (!found) {
      std::cerr << "error: unknown preset '" << preset << "'\n";
      return playground::kExitUsage;
    }
    state = std::string(*found);
  }

  if (serve) {
    try {
      playground::Session session(state, {std::chrono::milliseconds(tick_ms)});
      playground::serve(std::cin, std::cout, session);
    } catch (const playground::CodecError& e) {
      std::cerr << "error: " << e.what() << '\n';
      return playground::kExitCodec;
    }
    return playground::kExitOk;
  }

  try {
    spec.emit = parse_emit(emit);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return playground::kExitUsage;
  }
  spec.state = state;
  return playground::run(spec, std::cerr);
}
