#pragma once

#include <cmath>

namespace pnmetric {

inline constexpr double kDefaultTol = 1e-9;

// All axiom inequalities are absolute-tolerance comparisons:
//   "a <= b"  is checked as  a <= b + tol
//   "a == b"  is checked as  |a - b| <= tol
//   "a <  b"  (strict, as in (sssd)) requires a margin greater than tol.
inline bool leq(double a, double b, double tol) { return a <= b + tol; }
inline bool eq(double a, double b, double tol) { return std::abs(a - b) <= tol; }
inline bool strictly_less(double a, double b, double tol) { return a < b - tol; }

}  // namespace pnmetric
