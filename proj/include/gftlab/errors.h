#pragma once

#include <stdexcept>
#include <string>

namespace gftlab {

/// Input outside the mathematical domain of an operation (|z| >= 1, eta <= -1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical method failed to reach its target (Newton, quadrature, ODE).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed labels, unknown suite names, bad CLI flags.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace gftlab
