#include "panelize/log.hpp"

#include <cstdlib>
#include <iostream>
#include <mutex>

namespace panelize::log {

namespace {

Level parse_level()
{
    const char* raw = std::getenv("PANELIZE_LOG");
    if (!raw)
        return Level::off;
    std::string v(raw);
    for (char& c : v)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (v == "error")
        return Level::error;
    if (v == "warn" || v == "warning")
        return Level::warn;
    if (v == "info")
        return Level::info;
    if (v == "debug")
        return Level::debug;
    return Level::off;
}

const char* label(Level level)
{
    switch (level) {
    case Level::error: return "error";
    case Level::warn: return "warn";
    case Level::info: return "info";
    case Level::debug: return "debug";
    default: return "off";
    }
}

std::mutex io_mutex;

} // namespace

Level threshold()
{
    static const Level cached = parse_level();
    return cached;
}

void write(Level level, const std::string& msg)
{
    if (!on(level))
        return;
    std::lock_guard<std::mutex> lock(io_mutex);
    std::cerr << "panelize: [" << label(level) << "] " << msg << "\n";
}

} // namespace panelize::log
