#pragma once

#include <stdexcept>
#include <string>

namespace conic {

// Argument outside the hypotheses of the formula or operation being called.
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Floating-point routine failed (LP, NNLS, projection).
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input violates general position badly enough that a predicate is undefined.
struct DegenerateInput : NumericError {
  using NumericError::NumericError;
};

// Sampler could not produce a usable draw within its retry budget.
struct SamplingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace conic
