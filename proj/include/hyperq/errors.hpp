#pragma once

#include <stdexcept>
#include <string>

namespace hyperq {

/// Input rejected before any numerics ran: bad shapes, out-of-range indices,
/// singular configurations requested up front. CLI maps this to exit code 1.
class ValidationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure could not meet its contract: quadrature stall,
/// vanishing derivative, puncture crossing. CLI maps this to exit code 2.
class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace hyperq
