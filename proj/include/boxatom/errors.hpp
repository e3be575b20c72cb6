#pragma once

#include <stdexcept>
#include <string>

namespace boxatom {

/// Input that violates a documented precondition or invariant.
class ValidationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Valid input asking for something outside the implemented scope
/// (non-s-wave two-particle integrals, degenerate first order).
class UnsupportedFeature : public ValidationError {
public:
  using ValidationError::ValidationError;
};

/// Quadrature disagreement, non-finite integrand, eigensolver failure.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace boxatom
