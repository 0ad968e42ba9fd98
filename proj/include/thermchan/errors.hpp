#pragma once

#include <stdexcept>

namespace thermchan {

// Bad argument values (negative photon numbers, non-finite inputs, wrong
// probe kind for an estimator, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A channel parameter outside the physical region, or a finite-difference
// stencil that would leave it.
class PhysicalityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace thermchan
