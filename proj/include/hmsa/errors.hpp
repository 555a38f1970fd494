#pragma once

#include <stdexcept>
#include <string>

namespace hmsa {

/// Argument outside the mathematical domain of an operation (bad index, |z| > 1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Surface description that does not define a star-shaped surface.
class InvalidSurfaceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed surface-spec or configuration input.
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Base for failures of a numerical kernel on otherwise valid input.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evaluation point too close to the surface for regular quadrature.
class NearSingularityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Exterior-series evaluation requested where the expansion diverges.
class DivergenceRegionError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class IllConditionedError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Angular-derivative evaluation at theta = 0 or pi.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace hmsa
