#pragma once

#include <stdexcept>
#include <string>

namespace specaug {

// Malformed user input: bad files, out-of-range ids, violated preconditions.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A barrier value was reached or crossed by the spectrum it is supposed to bound.
struct BarrierViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Preconditions of the fast approximate backends do not hold for the current state.
struct AssumptionViolated : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Every seeded retry of a randomized routine failed its acceptance checks.
struct RetryExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace specaug
