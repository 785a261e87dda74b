#pragma once

#include <stdexcept>
#include <string>

namespace semigroup_lab {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Operands of an operation do not share a dimension.
struct DimensionError : Error {
  using Error::Error;
};

/// A matrix required to be invertible is singular (or numerically so).
struct SingularityError : Error {
  SingularityError(const std::string& what, double step) : Error(what), step(step) {}
  double step;  // the h at which (I - hA) degenerated
};

/// An iterative scheme failed to reach its tolerance within its budget.
struct ConvergenceError : Error {
  using Error::Error;
};

/// A computation left the representable range.
struct OverflowError : Error {
  using Error::Error;
};

/// Difference-quotient residuals grew instead of shrinking.
struct ExtrapolationError : Error {
  using Error::Error;
};

/// A least-squares fit is degenerate (no spread in the abscissae).
struct FitError : Error {
  using Error::Error;
};

/// A caller violated a documented precondition.
struct InputError : Error {
  using Error::Error;
};

/// A refinement schedule was exhausted before reaching the tolerance.
struct ToleranceNotReached : Error {
  ToleranceNotReached(const std::string& what, double gap) : Error(what), final_gap(gap) {}
  double final_gap;
};

/// A report or data file does not match its expected layout.
struct FormatError : Error {
  using Error::Error;
};

/// An experiment configuration failed to parse or validate.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace semigroup_lab
