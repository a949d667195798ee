#pragma once

#include <stdexcept>
#include <string>

namespace cdflow {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input rejected by a precondition check (bad parameters, malformed files).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// The curve is geometrically degenerate (zero length, collapsed segment,
/// unresolved winding number).
class DegenerateGeometry : public Error {
 public:
  using Error::Error;
};

/// Caller broke an operation contract, e.g. asked for curvature of a curve
/// that has not been resampled to uniform arclength.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// Linear solve did not reach its tolerance.
class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace cdflow
