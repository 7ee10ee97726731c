#pragma once

#include <stdexcept>
#include <string>

namespace irtr {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (e.g. a nonpositive separation).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Numerical failures; the CLI maps these to exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class NormalizationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DegenerateStateError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class CutoffError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// An outcome with vanishing probability carries a non-vanishing derivative.
class DegenerateOutcomeError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A Fisher information matrix exceeds its quantum limit beyond tolerance.
class BoundViolationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class InfeasibleBudgetError : public Error {
 public:
  using Error::Error;
};

/// Invalid experiment configuration; the CLI maps these to exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace irtr
