#pragma once

#include <stdexcept>
#include <string>

namespace netshift {

// Raised when inputs violate a documented precondition (bad parameters,
// malformed files, incompatible shapes). The CLI maps these to exit code 2.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Seed rows too degenerate to pin down an alignment (rank-deficient
// cross-covariance or seed block).
struct DegenerateSeedsError : InputError {
  using InputError::InputError;
};

// Numerical failure inside the pipeline (eigensolver breakdown, singular
// embedding Gram matrix). The CLI maps these to exit code 1.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace netshift
