#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "playground/frame.hpp"
#include "playground/heatmap.hpp"
#include "playground/session.hpp"
#include "playground/state_codec.hpp"
#include "playground/trainer.hpp"

namespace playground {

enum class Emit { losses, heatmaps, final_state, frames };

struct RunSpec {
  std::string state;
  int epochs = 0;
  std::filesystem::path out_dir = ".";
  int heatmap_resolution = 100;
  std::set<Emit> emit = {Emit::losses, Emit::final_state};
};

inline constexpr int kMaxRunEpochs = 100000;

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitCodec = 2, kExitFilesystem = 3 };

namespace detail {

class WriteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw WriteError("cannot open " + path.string() + " for writing");
  os << contents;
  os.flush();
  if (!os) throw WriteError("failed writing " + path.string());
}

}  // namespace detail

/// Headless run: create a session, train `epochs` epochs, write the requested
/// artifacts into out_dir. Output bytes depend only on the spec.
inline int run(const RunSpec& spec, std::ostream& diagnostics) {
  if (spec.epochs < 0 || spec.epochs > kMaxRunEpochs) {
    diagnostics << "error: epochs must be in [0, " << kMaxRunEpochs << "]\n";
    return kExitUsage;
  }
  std::optional<Session> session;
  try {
    session.emplace(spec.state);
  } catch (const CodecError& e) {
    diagnostics << "error: " << e.what() << '\n';
    return kExitCodec;
  }
  for (const std::string& d : decode(spec.state).diagnostics)
    diagnostics << "warning: " << d << '\n';

  const bool want_heatmaps = spec.emit.contains(Emit::heatmaps);
  if (want_heatmaps && (spec.heatmap_resolution < 2 ||
                        spec.heatmap_resolution > kMaxHeatmapResolution)) {
    diagnostics << "error: heatmap resolution must be in [2, " << kMaxHeatmapResolution << "]\n";
    return kExitUsage;
  }

  try {
    std::error_code ec;
    std::filesystem::create_directories(spec.out_dir, ec);
    if (ec || !std::filesystem::is_directory(spec.out_dir))
      throw detail::WriteError("cannot create output directory " + spec.out_dir.string());

    std::ostringstream frames;
    for (int i = 0; i < spec.epochs; ++i) {
      const Frame f = session->handle(command::Step{});
      if (spec.emit.contains(Emit::frames)) frames << serialize_frame(f) << '\n';
    }

    if (spec.emit.contains(Emit::losses)) {
      std::ostringstream csv;
      write_loss_csv(csv, session->trainer().loss_series);
      detail::write_file(spec.out_dir / "losses.csv", csv.str());
    }
    if (want_heatmaps) {
      const Network& net = session->trainer().net;
      const std::vector<HeatmapGrid> grids = sample_all_units(net, spec.heatmap_resolution);
      for (std::size_t i = 0; i < grids.size(); ++i) {
        std::ostringstream ppm;
        write_ppm(ppm, grids[i]);
        detail::write_file(spec.out_dir / ("unit_" + net.nodes()[i].id + ".ppm"), ppm.str());
      }
    }
    if (spec.emit.contains(Emit::final_state))
      detail::write_file(spec.out_dir / "final_state.txt", session->state_string() + "\n");
    if (spec.emit.contains(Emit::frames))
      detail::write_file(spec.out_dir / "frames.jsonl", frames.str());
  } catch (const detail::WriteError& e) {
    diagnostics << "error: " << e.what() << '\n';
    return kExitFilesystem;
  }
  return kExitOk;
}

}  // namespace playground
