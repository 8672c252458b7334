#pragma once

#include <stdexcept>
#include <string>

namespace waypoint_rl {

// Invalid configuration or contract violation detected before running.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input file (CSV/JSON). Messages carry path and line context.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Failed filesystem write/read at runtime, with path context.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure while simulating (plant divergence).
struct SimulationError : std::runtime_error {
    explicit SimulationError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace waypoint_rl
