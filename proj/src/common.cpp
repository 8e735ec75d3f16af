#include "rdcnet/common.hpp"

#include <cstdlib>
#include <iostream>
#include <mutex>

namespace rdcnet::logging {

namespace {

LogLevel g_level = level_from_env();
std::mutex g_mutex;

void emit(LogLevel at, const char* tag, std::string_view msg) {
    if (at < g_level) return;
    std::lock_guard<std::mutex> lock(g_mutex);
    std::cerr << "[rdcnet] " << tag << ": " << msg << "\n";
}

}  // namespace

void set_level(LogLevel level) { g_level = level; }

LogLevel level() { return g_level; }

LogLevel level_from_env() {
    const char* env = std::getenv("RDCNET_LOG");
    if (env == nullptr) return LogLevel::Info;
    std::string_view v{env};
    if (v == "debug") return LogLevel::Debug;
    if (v == "info") return LogLevel::Info;
    if (v == "warn") return LogLevel::Warn;
    if (v == "error") return LogLevel::Error;
    if (v == "quiet") return LogLevel::Quiet;
    return LogLevel::Info;
}

void debug(std::string_view msg) { emit(LogLevel::Debug, "debug", msg); }
void info(std::string_view msg) { emit(LogLevel::Info, "info", msg); }
void warn(std::string_view msg) { emit(LogLevel::Warn, "warn", msg); }
void error(std::string_view msg) { emit(LogLevel::Error, "error", msg); }

}  // namespace rdcnet::logging
