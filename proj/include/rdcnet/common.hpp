// common.hpp
// Error types and logging shared by all rdcnet modules.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rdcnet {

// Bad or missing input data (malformed CSV, invalid configuration).
// The CLI maps this to exit code 1.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A numerical or structural failure while computing (insufficient overlap,
// degenerate sample, non-symmetric matrix). The CLI maps this to exit code 2.
class ComputeError : public std::runtime_error {
public:
    explicit ComputeError(const std::string& what) : std::runtime_error(what) {}
};

enum class LogLevel { Debug = 0, Info = 1, Warn = 2, Error = 3, Quiet = 4 };

namespace logging {

// Level comes from RDCNET_LOG (debug|info|warn|error|quiet) unless set explicitly.
void set_level(LogLevel level);
LogLevel level();
LogLevel level_from_env();

void debug(std::string_view msg);
void info(std::string_view msg);
void warn(std::string_view msg);
void error(std::string_view msg);

}  // namespace logging

}  // namespace rdcnet
