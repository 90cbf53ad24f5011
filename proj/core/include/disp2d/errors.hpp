#pragma once

#include <stdexcept>
#include <string>

namespace disp2d {

// Validation failures (bad config/arguments): CLI exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failures (singular operator, nonconvergent quadrature): CLI exit code 3.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace disp2d
