#include "soa/log.hpp"

#include <atomic>
#include <iostream>
#include <mutex>

namespace soa::log {

namespace {
std::atomic<Level> g_level{Level::Warn};
std::mutex g_mutex;
}  // namespace

void set_level(Level level) { g_level = level; }
Level level() { return g_level; }

Level parse_level(std::string_view name) {
  if (name == "debug") return Level::Debug;
  if (name == "info") return Level::Info;
  if (name == "warn") return Level::Warn;
  if (name == "error") return Level::Error;
  if (name == "off") return Level::Off;
  return Level::Info;
}

void write(Level lvl, std::string_view message, const nlohmann::json& fields) {
  if (lvl < g_level.load()) return;
  static constexpr const char* kNames[] = {"debug", "info", "warn", "error", "off"};
  nlohmann::json rec = {{"level", kNames[static_cast<int>(lvl)]}, {"msg", message}};
  if (fields.is_object())
    for (const auto& [k, v] : fields.items()) rec[k] = v;
  std::string line = rec.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
  std::lock_guard lock(g_mutex);
  std::cerr << line << '\n';
}

}  // namespace soa::log
