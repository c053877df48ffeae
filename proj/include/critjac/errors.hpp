#pragma once

#include <stdexcept>
#include <string>

namespace critjac {

// Parameters outside the operation's domain (alpha, b, E, indices, ...).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// C_n or S_n is numerically singular at the requested index.
struct SingularConjugator : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Both anchor values are zero: the recurrence has no nontrivial solution.
struct DegenerateAnchor : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Requested index lies outside the computed trace.
struct OutOfRange : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// Not enough samples in the window to run a fit.
struct InsufficientData : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Fewer eigenvalues stabilized between truncation sizes than requested.
struct NotStabilized : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A counting check was asked about energies beyond the stabilized range.
struct InsufficientStabilization : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A trial vector touches sites excluded from the subspace under test.
struct SupportViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The spectral window is too narrow to hold one odd site per subinterval.
struct WindowTooSmall : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace critjac
