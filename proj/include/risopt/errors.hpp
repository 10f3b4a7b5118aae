#pragma once
// Error taxonomy. The CLI maps these onto distinct exit codes, so keep the
// classes disjoint: bad input files/values, demands outside the rectifier's
// range, and genuine numerical breakdowns are different failure modes.
#include <stdexcept>
#include <string>

namespace risopt {

// Malformed or inconsistent configuration / input data (CLI exit code 1).
struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// A DC demand no input power can supply (the rectifier saturates below it).
// The optimizer treats this as an infeasibility verdict, not a crash.
struct unreachable_demand : std::runtime_error {
    explicit unreachable_demand(const std::string& what) : std::runtime_error(what) {}
};

// Solver/quadrature self-checks failed (CLI exit code 3).
struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace risopt
