#pragma once

#include <stdexcept>
#include <string>

namespace hw {

/// Argument outside the mathematical domain of an operation.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// An iterative scheme failed to reach its tolerance within the iteration cap.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// No sign change could be located for a root search.
struct NoRootError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A result would carry fewer significant digits than requested.
struct PrecisionLossError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace hw
