#pragma once

#include <stdexcept>
#include <string>

namespace hsqed {

// Invalid physical input: n < 1, source point not in vacuum, zero in-plane
// wavevector where a polarization frame is required, and so on.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Evaluation exactly on a Green's function singularity.
class SingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A quadrature or extrapolation did not meet its tolerance.
class NonConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hsqed
