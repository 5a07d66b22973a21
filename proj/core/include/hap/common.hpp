#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace hap {

// Forbidden-assignment sentinel. -inf + finite = -inf, and -inf never wins a
// max against a finite value, so it propagates through the sweeps unchanged.
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Finite stand-in used where the max-sum arithmetic would otherwise produce
// +inf (a point whose only admissible exemplar is itself). Message entries
// are clamped to [-kBig, kBig]; -inf passes through untouched. On instances
// whose rows have more than one finite entry the clamp never fires.
inline constexpr double kBig = 1e30;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dimension mismatches, infeasible parameters, invalid inputs.
struct StructuralError : Error {
  using Error::Error;
};

// NaN or +inf detected in a message array.
struct NumericalError : Error {
  using Error::Error;
};

// File parse or serialization failure.
struct IoError : Error {
  using Error::Error;
};

}  // namespace hap
