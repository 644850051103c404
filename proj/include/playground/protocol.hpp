#pragma once

#include <chrono>
#include <condition_variable>
#include <deque>
#include <istream>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>

#include <json.hpp>

#include "playground/format.hpp"
#include "playground/session.hpp"

namespace playground {

class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses a `{"cmd": <kind>, ...}` document.
inline Command parse_command(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError(std::string("command is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("cmd") || !j["cmd"].is_string())
    throw ProtocolError("command document needs a string \"cmd\" field");
  const std::string kind = j["cmd"].get<std::string>();
  auto string_field = [&](const char* name) {
    if (!j.contains(name)) throw ProtocolError(kind + " needs a \"" + name + "\" field");
    const auto& v = j[name];
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number()) return format_double(v.get<double>());
    throw ProtocolError(std::string("field \"") + name + "\" must be a string or number");
  };

  if (kind == "play") return command::Play{};
  if (kind == "pause") return command::Pause{};
  if (kind == "step") return command::Step{};
  if (kind == "reset") return command::Reset{};
  if (kind == "set_config") return command::SetConfig{string_field("state")};
  if (kind == "set_param") return command::SetParam{string_field("key"), string_field("value")};
  if (kind == "get_frame") {
    int resolution = 0;
    if (j.contains("heatmap_resolution")) {
      if (!j["heatmap_resolution"].is_number_integer())
        throw ProtocolError("heatmap_resolution must be an integer");
      resolution = j["heatmap_resolution"].get<int>();
    }
    return command::GetFrame{resolution};
  }
  throw ProtocolError("unknown command '" + kind + "'");
}

inline std::string serialize_command(const Command& cmd) {
  struct Visitor {
    nlohmann::ordered_json operator()(const command::Play&) const { return {{"cmd", "play"}}; }
    nlohmann::ordered_json operator()(const command::Pause&) const { return {{"cmd", "pause"}}; }
    nlohmann::ordered_json operator()(const command::Step&) const { return {{"cmd", "step"}}; }
    nlohmann::ordered_json operator()(const command::Reset&) const { return {{"cmd", "reset"}}; }
    nlohmann::ordered_json operator()(const command::SetConfig& c) const {
      return {{"cmd", "set_config"}, {"state", c.state}};
    }
    nlohmann::ordered_json operator()(const command::SetParam& c) const {
      return {{"cmd", "set_param"}, {"key", c.key}, {"value", c.value}};
    }
    nlohmann::ordered_json operator()(const command::GetFrame& c) const {
      return {{"cmd", "get_frame"}, {"heatmap_resolution", c.heatmap_resolution}};
    }
  };
  return std::visit(Visitor{}, cmd).dump();
}

/// Line-oriented pipe transport. Reads one command document per line from
/// `in` and writes one frame document per line to `out`: a reply per command,
/// plus one frame per epoch while playing. Commands and scheduled epochs are
/// interleaved on this thread only; a reader thread just queues lines.
/// Returns when `in` reaches end of input.
inline void serve(std::istream& in, std::ostream& out, Session& session) {
  std::mutex mutex;
  std::condition_variable ready;
  std::deque<std::string> pending;
  bool closed = false;

  std::thread reader([&] {
    std::string line;
    while (std::getline(in, line)) {
      std::lock_guard lock(mutex);
      pending.push_back(std::move(line));
      ready.notify_one();
    }
    std::lock_guard lock(mutex);
    closed = true;
    ready.notify_one();
  });

  auto emit = [&out](const Frame& f) { out << serialize_frame(f) << '\n' << std::flush; };
  auto next_tick = std::chrono::steady_clock::now() + session.options().tick;

  while (true) {
    std::unique_lock lock(mutex);
    auto has_work = [&] { return !pending.empty() || closed; };
    if (session.running()) ready.wait_until(lock, next_tick, has_work);
    else ready.wait(lock, has_work);

    if (!pending.empty()) {
      std::string line = std::move(pending.front());
      pending.pop_front();
      lock.unlock();
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      const bool was_running = session.running();
      try {
        emit(session.handle(parse_command(line)));
      } catch (const ProtocolError& e) {
        Frame f = session.frame();
        f.error = e.what();
        emit(f);
      }
      if (!was_running && session.running())
        next_tick = std::chrono::steady_clock::now() + session.options().tick;
      continue;
    }
    if (closed) break;
    lock.unlock();
    if (session.running() && std::chrono::steady_clock::now() >= next_tick) {
      if (auto f = session.tick()) emit(*f);
      next_tick += session.options().tick;
    }
  }
  reader.join();
}

}  // namespace playground
