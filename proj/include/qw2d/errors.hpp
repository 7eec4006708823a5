#pragma once

#include <stdexcept>
#include <string>

namespace qw2d {

// Coin parameters or other numeric inputs outside their admissible range.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The Bloch matrix has a repeated eigenvalue (tau^2 = 1) at the requested k.
class DegeneracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A velocity point outside the open support, or a branch request that has
// no meaning for the given point.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Floating-point spill beyond the clamping allowance.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qw2d
