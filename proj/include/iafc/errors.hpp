#pragma once

#include <stdexcept>
#include <string>

namespace iafc {

// Bad user input: malformed config, contradictory sections, unknown atoms.
// The CLI maps this to exit code 1.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical infeasibility: a grid that would blow the sample budget, a
// window falling off the simulated span. Exit code 2.
class GridError : public std::runtime_error {
public:
    explicit GridError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace iafc
