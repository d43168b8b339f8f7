#pragma once

#include <stdexcept>

namespace netabs {

// Raised for malformed or out-of-contract caller input (bad file contents,
// parameter ranges, incompatible dimensions).  CLI maps this to exit code 1.
struct invalid_input : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Raised when a numeric precondition fails at run time (disconnected graph
// where a connected one is required, singular solve, residual too large).
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace netabs
