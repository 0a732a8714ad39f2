#pragma once

#include <string_view>

namespace bundlekit {

enum class LogLevel { error = 0, warn = 1, info = 2, debug = 3 };

/// Level from BUNDLEKIT_LOG (error|warn|info|debug or 0-3); warn when unset.
LogLevel log_level();

void log(LogLevel level, std::string_view message);

}  // namespace bundlekit
