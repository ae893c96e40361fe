#pragma once

#include <stdexcept>
#include <string>

namespace kahler {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression construction (arity mismatch, zero denominator, ...).
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// Numerical evaluation left the analytic domain: division by zero, a
/// principal-branch cut, or a point outside a potential's admissible set.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A point is not in the domain of the requested blow-up chart.
class ChartDomainError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// An operation undefined on the exceptional divisor (or at z = 0) was requested.
class ExceptionalDivisorError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A closed-form expression was evaluated on its genuine singular locus.
class SingularEvaluationError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The complex Hessian of a potential is not positive definite at a point.
class NotPositiveDefiniteError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Invalid user configuration (unknown check id, bad flag value, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace kahler
