#pragma once

#include "opjensen/interval.hpp"
#include "opjensen/polynomial.hpp"
#include "opjensen/scalar_function.hpp"

namespace opjensen {

// Chord and parallel tangent of a convex function on [m, M]:
//   chord   x -> a*x + b        lies above f,
//   tangent x -> a*x + b_prime  touches f at x0 and lies below it.
struct LinearBound {
  double a = 0.0;        // common slope (f(M) - f(m)) / (M - m)
  double b = 0.0;        // chord intercept
  double x0 = 0.0;       // tangency abscissa, f'(x0) = a
  double b_prime = 0.0;  // tangent intercept f(x0) - a*x0
};

// Computes the chord/tangent pair of f on [m, M].  fprime must be the
// derivative of f.  The tangency point is located by bisection of
// fprime(x) - a to 1e-12; if fprime - a does not change sign on [m, M]
// (f not convex there, say) NoTangentPoint is raised.
LinearBound chord_tangent(const ScalarFunction& f, const ScalarFunction& fprime,
                          double m, double M);

inline LinearBound chord_tangent(const ScalarFunction& f, double m, double M) {
  return chord_tangent(f, f.derivative(), m, M);
}

// Two-sided polynomial envelope of f on an interval:
//   0 <= f - lower <= eps   and   0 <= upper - f <= eps   pointwise.
struct Envelope {
  ScalarFunction f = ScalarFunction::identity();
  Interval interval;
  Polynomial lower;
  Polynomial upper;
  double eps = 0.0;
};

// Builds an envelope by interpolating f at the degree+1 Chebyshev nodes of
// [m, M], measuring the dense-grid sup-error e of the interpolant, and
// shifting it by e * margin both ways (margin 1.05), giving eps = 2*e*margin.
// Raises EpsNotAchievable (carrying the achieved width) if eps > target_eps.
Envelope build_envelope(const ScalarFunction& f, double m, double M, int degree,
                        double target_eps);

// Envelope whose upper polynomial is the chord and whose lower polynomial is
// the parallel tangent; eps is the measured sup distance from f to the lines.
Envelope envelope_from_chord_tangent(const ScalarFunction& f, double m, double M);

// Grid-checks the envelope inequalities (sampling `samples` points plus both
// endpoints) within a relative slack of 1e-12; throws ValidationError on the
// first violated point.
void validate_envelope(const Envelope& env, int samples = 4096);

}  // namespace opjensen
