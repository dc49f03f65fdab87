// errors.hpp — error types shared across the library.
#pragma once

#include <stdexcept>

namespace magnonbath {

// Parameter or argument outside the physical domain of an operation.
using DomainError = std::domain_error;

// Evaluation landed exactly on a non-removable singularity (band edge,
// band centre in 2d, K(1), ...).  Callers iterating over grids may catch
// this per point and skip.
struct SingularityError : std::domain_error {
  using std::domain_error::domain_error;
};

// An iterative scheme exhausted its budget before reaching tolerance.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace magnonbath
