#include "macoord/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <string>

namespace macoord::log {

namespace {

Level parse_level(const char* s) {
  if (s == nullptr) return Level::Warn;
  std::string v(s);
  if (v == "debug") return Level::Debug;
  if (v == "info") return Level::Info;
  if (v == "warn" || v == "warning") return Level::Warn;
  if (v == "error") return Level::Error;
  if (v == "off" || v == "none") return Level::Off;
  return Level::Warn;
}

const char* tag(Level level) {
  switch (level) {
    case Level::Debug: return "debug";
    case Level::Info: return "info";
    case Level::Warn: return "warn";
    case Level::Error: return "error";
    default: return "?";
  }
}

std::mutex io_mutex;

}  // namespace

Level threshold() {
  static const Level cached = parse_level(std::getenv("MACOORD_LOG"));
  return cached;
}

bool enabled(Level level) {
  return static_cast<int>(level) >= static_cast<int>(threshold());
}

void write(Level level, std::string_view message) {
  std::lock_guard<std::mutex> lock(io_mutex);
  std::fprintf(stderr, "[macoord %s] %.*s\n", tag(level),
               static_cast<int>(message.size()), message.data());
}

}  // namespace macoord::log
