#pragma once

#include <sstream>
#include <string>

namespace panelize::log {

enum class Level { off = 0, error = 1, warn = 2, info = 3, debug = 4 };

// Threshold parsed once from the PANELIZE_LOG environment variable
// (off|error|warn|info|debug, default off).
Level threshold();

inline bool on(Level level) { return static_cast<int>(level) <= static_cast<int>(threshold()); }

// Writes "panelize: [level] msg" to stderr when the threshold allows it.
void write(Level level, const std::string& msg);

} // namespace panelize::log

// Message expression is only evaluated when the level is enabled.
#define PANELIZE_LOG(level, expr)                                                  \
    do {                                                                           \
        if (::panelize::log::on(::panelize::log::Level::level)) {                  \
            std::ostringstream panelize_log_stream;                                \
            panelize_log_stream << expr;                                           \
            ::panelize::log::write(::panelize::log::Level::level,                  \
                                   panelize_log_stream.str());                     \
        }                                                                          \
    } while (0)
