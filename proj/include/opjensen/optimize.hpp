#pragma once

#include <functional>
#include <vector>

#include "opjensen/interval.hpp"
#include "opjensen/scalar_function.hpp"

namespace opjensen {

struct Optimum {
  double x = 0.0;
  double value = 0.0;
};

enum class OptimizeMode { Minimize, Maximize };

// Abscissa of the minimum of f on [lo, hi], assuming f is unimodal there,
// located to within xtol by golden-section search.
double golden_section_min(const std::function<double(double)>& f, double lo,
                          double hi, double xtol = 1e-10);

// Global extremum of h over a union of closed intervals: a dense grid scan
// (4097 points per interval) followed by golden-section refinement around the
// best grid cell.  Ties break toward the smaller abscissa, so results are
// deterministic.  Degenerate intervals are treated as single points.
Optimum scalar_optimize(const std::function<double(double)>& h,
                        const std::vector<Interval>& intervals,
                        OptimizeMode mode);

inline Optimum scalar_optimize(const ScalarFunction& h,
                               const std::vector<Interval>& intervals,
                               OptimizeMode mode) {
  return scalar_optimize([&h](double x) { return h(x); }, intervals, mode);
}

// Image bounds [min f, max f] over [m, M].  Requires [m, M] inside the domain
// of f.  A degenerate interval collapses to the point value f(m).
Interval function_range(const ScalarFunction& f, double m, double M);

// Same, for a raw callable with no domain information.
Interval function_range(const std::function<double(double)>& f, double m,
                        double M);

}  // namespace opjensen
