#pragma once

#include <algorithm>
#include <cmath>

namespace opjensen {

// Closed real interval [lo, hi].
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool valid() const { return lo <= hi; }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& other) const {
    return lo <= other.lo && other.hi <= hi;
  }
};

inline Interval hull(const Interval& a, const Interval& b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

// Width below which an interval collapses to a single point for range and
// Kantorovich purposes.  Relative to the magnitude of the right endpoint so
// that large windows do not trip the threshold spuriously.
inline bool is_degenerate(double m, double M) {
  return (M - m) < 1e-12 * std::max(1.0, std::abs(M));
}

inline bool is_degenerate(const Interval& iv) {
  return is_degenerate(iv.lo, iv.hi);
}

}  // namespace opjensen
