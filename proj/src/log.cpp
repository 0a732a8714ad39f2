#include "bundlekit/log.hpp"

#include <cstdlib>
#include <iostream>
#include <mutex>
#include <string>

namespace bundlekit {

namespace {

LogLevel parse_level(const char* text) {
  if (text == nullptr) return LogLevel::warn;
  const std::string s(text);
  if (s == "error" || s == "0") return LogLevel::error;
  if (s == "warn" || s == "1") return LogLevel::warn;
  if (s == "info" || s == "2") return LogLevel::info;
  if (s == "debug" || s == "3") return LogLevel::debug;
  return LogLevel::warn;
}

const char* label(LogLevel level) {
  switch (level) {
    case LogLevel::error: return "error";
    case LogLevel::warn: return "warn";
    case LogLevel::info: return "info";
    case LogLevel::debug: return "debug";
  }
  return "";
}

}  // namespace

LogLevel log_level() {
  static const LogLevel level = parse_level(std::getenv("BUNDLEKIT_LOG"));
  return level;
}

void log(LogLevel level, std::string_view message) {
  if (static_cast<int>(level) > static_cast<int>(log_level())) return;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  std::cerr << "[bundlekit " << label(level) << "] " << message << '\n';
}

}  // namespace bundlekit
