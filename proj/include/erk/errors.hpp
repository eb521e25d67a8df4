#pragma once

#include <stdexcept>
#include <string>

namespace erk {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Non-finite or otherwise malformed numerical input.
struct InvalidInputError : Error {
    using Error::Error;
};

/// Bad user-facing parameter (problem parameters, grid spec, ...).
struct InvalidParameterError : Error {
    using Error::Error;
};

/// Requested method name is not in the catalogue.
struct UnknownMethodError : Error {
    using Error::Error;
};

/// Requested order has no scheme / no correction formula in the catalogue.
struct UnsupportedOrderError : Error {
    using Error::Error;
};

/// Overflow detected while squaring in the matrix exponential.
struct OverflowError : Error {
    using Error::Error;
};

/// Stage iteration exceeded max_iter; carries the final residual.
struct NonConvergenceError : Error {
    NonConvergenceError(const std::string& what, double residual_, int iterations_)
        : Error(what), residual(residual_), iterations(iterations_) {}
    double residual;
    int iterations;
};

/// The linearly-implicit stage matrix is (numerically) singular.
struct SingularStageError : Error {
    using Error::Error;
};

/// (t_end - t0)/h is not a positive integer.
struct InvalidGridError : Error {
    using Error::Error;
};

/// A step failed mid-trajectory; carries the failing step index.
struct StepFailureError : Error {
    StepFailureError(const std::string& what, int step_index_)
        : Error(what), step_index(step_index_) {}
    int step_index;
};

/// The fine-grid reference failed its Richardson self-consistency check.
struct UnreliableReferenceError : Error {
    using Error::Error;
};

}  // namespace erk
