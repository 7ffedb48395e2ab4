#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "schauder/error.hpp"

namespace schauder {

// A certified enclosure [lower, upper] of a nonnegative quantity. `exact` is
// set only when both ends come from the same closed-form evaluation.
struct ConstantBound {
  double lower = 0.0;
  double upper = 0.0;
  bool exact = false;

  static ConstantBound exact_value(double v) { return {v, v, true}; }

  static ConstantBound interval(double lo, double hi) {
    if (std::isnan(lo) || std::isnan(hi) || lo > hi) {
      throw PreconditionError("ConstantBound: lower bound exceeds upper bound");
    }
    return {lo, hi, false};
  }

  static ConstantBound unbounded() {
    return {0.0, std::numeric_limits<double>::infinity(), false};
  }

  bool contains(double v, double tol = 0.0) const {
    return v >= lower - tol && v <= upper + tol;
  }

  double width() const { return upper - lower; }
};

// Criteria are strict inequalities "< 1" whose boundary value 1 is attained
// by common inputs (the tail of a frame after fewer than dim E terms acts as
// the identity on a nonzero subspace). Rounding can land such a value just
// below 1, so a computed upper end counts as below 1 only with this margin.
inline constexpr double kStrictMargin = 1e-12;

inline bool below_one(double upper) { return upper < 1.0 - kStrictMargin; }
inline bool below_one(const ConstantBound& b) { return below_one(b.upper); }

// Componentwise maximum; exact only if both operands are.
inline ConstantBound max(const ConstantBound& a, const ConstantBound& b) {
  return {std::max(a.lower, b.lower), std::max(a.upper, b.upper), a.exact && b.exact};
}

}  // namespace schauder
