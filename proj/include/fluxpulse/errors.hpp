#pragma once

#include <stdexcept>
#include <string>

namespace fluxpulse {

// Bad input file / config / CLI usage. CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Simulation-level failure (norm drift, non-convergence, eigensolver fault).
// CLI maps this to exit code 3.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Underdetermined or degenerate fit input. CLI maps this to exit code 4.
struct FitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace fluxpulse
