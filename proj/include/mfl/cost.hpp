#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace mfl {

/// Costs are exact integers in scaled units. kInf marks "unreachable".
using Cost = std::int64_t;
using Location = std::int32_t;
using FacilityId = std::int32_t;

inline constexpr Cost kInf = std::numeric_limits<Cost>::max();
inline constexpr Location kNoLocation = -1;

/// Saturating addition: anything touching kInf (or overflowing) is kInf.
constexpr Cost sat_add(Cost a, Cost b) {
  if (a == kInf || b == kInf) return kInf;
  Cost out = 0;
  if (__builtin_add_overflow(a, b, &out)) return kInf;
  return out;
}

/// Saturating product of a non-negative multiplier and a cost. A zero
/// multiplier yields zero even against kInf (zero weight or demand is free).
constexpr Cost sat_mul(Cost factor, Cost c) {
  if (factor == 0) return 0;
  if (c == kInf) return kInf;
  Cost out = 0;
  if (__builtin_mul_overflow(factor, c, &out)) return kInf;
  return out;
}

/// Input that violates a documented precondition.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace mfl
