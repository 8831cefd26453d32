#pragma once

#include <stdexcept>
#include <string>

namespace clamped {

// Argument outside the mathematical domain of an operation.
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Series, root finder or integrator failed to reach the requested accuracy.
struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Evaluation too close to a zero of a denominator (pole of a log-derivative).
struct pole_error : convergence_error {
    using convergence_error::convergence_error;
};

}  // namespace clamped
