#pragma once

#include <stdexcept>
#include <string>

namespace ringwave {

// Bad user-facing input: malformed files, out-of-range parameters.
struct invalid_input : std::runtime_error {
    explicit invalid_input(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical breakdown: singular systems, guard thresholds exceeded.
struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace ringwave
