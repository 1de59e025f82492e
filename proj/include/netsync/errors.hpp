#pragma once

#include <stdexcept>
#include <string>

namespace netsync {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Precondition violation: bad sizes, bad parameter ranges, malformed input.
struct InvalidArgument : Error {
    using Error::Error;
};

/// A state or variational entry exceeded the blow-up threshold (or went
/// non-finite) during integration.
struct BlowUpError : Error {
    double time;
    BlowUpError(const std::string& msg, double t) : Error(msg), time(t) {}
};

/// Period detection failed: fewer than three upward level crossings.
struct NoPeriodError : Error {
    using Error::Error;
};

/// An iterative solver (QR, Newton) hit its iteration cap without converging,
/// or a linear solve met a singular matrix.
struct ConvergenceError : Error {
    using Error::Error;
};

/// Malformed or self-inconsistent run configuration.
struct ConfigError : Error {
    using Error::Error;
};

} // namespace netsync
