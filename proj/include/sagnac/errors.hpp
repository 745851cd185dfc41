#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sagnac {

/// Base class for errors where the inputs are well-formed but the physics
/// (or the data) rejects them. CLI maps these to exit code 2.
struct PhysicsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The requested internal-reflection geometry is below the critical angle.
struct NoTotalInternalReflection : PhysicsError {
  using PhysicsError::PhysicsError;
};

/// A measured probability is outside the range any parameter set can produce.
struct InconsistentMeasurement : PhysicsError {
  using PhysicsError::PhysicsError;
};

/// A root search has no solution in the allowed parameter range.
struct NoSolution : PhysicsError {
  using PhysicsError::PhysicsError;
};

/// The input state lies outside the family an operation is defined on.
struct UnsupportedInput : PhysicsError {
  using PhysicsError::PhysicsError;
};

/// The sample design does not determine the fit parameters.
struct UnderdeterminedFit : PhysicsError {
  using PhysicsError::PhysicsError;
};

/// Structured parse failure for text inputs (bench documents, CSV files).
struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::size_t line_arg, std::size_t column_arg)
      : std::runtime_error(what), line(line_arg), column(column_arg) {}

  std::size_t line = 0;    // 1-based; 0 when not tied to a location
  std::size_t column = 0;  // 1-based; 0 when not tied to a location
};

}  // namespace sagnac
