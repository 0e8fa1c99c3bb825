#pragma once

#include <functional>
#include <string_view>

namespace ecoinv::log {

enum class Level { debug, info, warn };

using Sink = std::function<void(Level, std::string_view)>;

// Replaces the process-wide sink. The default writes warnings to stderr.
void set_sink(Sink sink);
void set_min_level(Level level);

void debug(std::string_view msg);
void info(std::string_view msg);
void warn(std::string_view msg);

}  // namespace ecoinv::log
