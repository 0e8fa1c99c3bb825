#include "ecoinv/log.hpp"

#include <iostream>
#include <mutex>
#include <string>
#include <utility>

namespace ecoinv::log {
namespace {

std::mutex& guard() {
  static std::mutex m;
  return m;
}

const char* label(Level level) {
  switch (level) {
    case Level::debug: return "debug";
    case Level::info: return "info";
    case Level::warn: return "warn";
  }
  return "info";
}

Sink& sink() {
  static Sink s = [](Level level, std::string_view msg) {
    std::cerr << "[ecoinv " << label(level) << "] " << msg << '\n';
  };
  return s;
}

Level& min_level() {
  static Level l = Level::warn;
  return l;
}

void emit(Level level, std::string_view msg) {
  std::lock_guard lock(guard());
  if (static_cast<int>(level) < static_cast<int>(min_level()) || !sink()) return;
  sink()(level, msg);
}

}  // namespace

void set_sink(Sink s) {
  std::lock_guard lock(guard());
  sink() = std::move(s);
}

void set_min_level(Level level) {
  std::lock_guard lock(guard());
  min_level() = level;
}

void debug(std::string_view msg) { emit(Level::debug, msg); }
void info(std::string_view msg) { emit(Level::info, msg); }
void warn(std::string_view msg) { emit(Level::warn, msg); }

}  // namespace ecoinv::log
