#pragma once

#include <stdexcept>
#include <string>

namespace toroidq {

// Configuration / input problems (bad parameter values, malformed config).
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operation requested outside the regime its formula is valid in
// (e.g. frequency-space transfer coefficients with nonzero intermode
// scattering).
struct regime_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Near-singular denominator in a closed-form expression.
struct singular_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Hilbert-space dimension above the configured cap.
struct dimension_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Iterative scheme failed to reach its tolerance; carries the residual.
struct convergence_error : std::runtime_error {
    double residual;
    convergence_error(const std::string& what, double res)
        : std::runtime_error(what + " (residual " + std::to_string(res) + ")"),
          residual(res)
    {
    }
};

} // namespace toroidq
