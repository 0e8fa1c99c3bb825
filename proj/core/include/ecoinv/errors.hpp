#pragma once

#include <stdexcept>
#include <string>

namespace ecoinv {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A kernel was evaluated at (or numerically on top of) its singular point.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// Invalid user input: bad configuration, malformed file, violated precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Curves that must be disjoint or nested are not.
class GeometryError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Numerical failure: a solve did not meet its certificate.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class SolverFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The stacked Newton system lost rank.
class StepFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The eigenvalue scan found a zero at the highest order it was allowed to look at.
class TruncationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace ecoinv
