#pragma once

#include <stdexcept>
#include <string>

namespace hybridfd {

// Invalid argument values, malformed configs, violated preconditions.
// The CLI maps this family to exit code 2.
struct validation_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Requested operation is not implemented for the given (kernel, operator)
// combination; distinct from validation_error because the inputs are legal,
// the capability is just out of scope.
struct capability_error : std::logic_error {
    using std::logic_error::logic_error;
};

// Numerical failures during factorization/solve. The CLI maps this family
// to exit code 3.
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exactly singular matrix (zero pivot).
struct singular_error : numerical_error {
    using numerical_error::numerical_error;
};

// Local system too ill-conditioned to trust: a pivot fell below the
// documented threshold. Carries the estimated 2-norm condition number.
struct conditioning_error : numerical_error {
    double condition_estimate;

    conditioning_error(const std::string& what, double cond)
        : numerical_error(what), condition_estimate(cond) {}
};

} // namespace hybridfd
