#include "opjensen/envelope.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "opjensen/errors.hpp"
#include "opjensen/optimize.hpp"

namespace opjensen {

namespace {

constexpr double kMargin = 1.05;

// Largest value of `diff` over [m, M]: dense grid plus golden refinement.
double sup_on_interval(const std::function<double(double)>& diff, double m, double M) {
  return scalar_optimize(diff, {{m, M}}, OptimizeMode::Maximize).value;
}

// Newton-form interpolation at the given nodes, expanded to monomial
// coefficients.  Fine at the low degrees used for envelopes.
Polynomial interpolate(const std::vector<double>& xs, const std::vector<double>& ys) {
  const size_t n = xs.size();
  // Divided differences in place.
  std::vector<double> dd(ys);
  for (size_t level = 1; level < n; ++level)
    for (size_t i = n - 1; i >= level; --i)
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
  // Horner on the Newton form: p = dd[n-1]; p = p*(x - xs[i]) + dd[i].
  Polynomial p = Polynomial::constant(dd[n - 1]);
  for (size_t i = n - 1; i-- > 0;)
    p = p * Polynomial::line(1.0, -xs[i]) + Polynomial::constant(dd[i]);
  return p;
}

}  // namespace

LinearBound chord_tangent(const ScalarFunction& f, const ScalarFunction& fprime,
                          double m, double M) {
  if (!(m <= M)) throw ValidationError("chord_tangent needs m <= M");
  if (is_degenerate(m, M))
    throw DegenerateInterval("chord_tangent: interval [" + std::to_string(m) + ", " +
                             std::to_string(M) + "] collapses to a point");
  if (!f.domain_contains(Interval{m, M}))
    throw DomainViolation("chord_tangent: [m, M] escapes the domain of " + f.name());

  LinearBound lb;
  lb.a = (f(M) - f(m)) / (M - m);
  lb.b = (M * f(m) - m * f(M)) / (M - m);

  // Tangency point: zero of fprime(x) - a, bracketed on [m, M].
  const auto slope_gap = [&](double x) { return fprime(x) - lb.a; };
  double lo = m, hi = M;
  double glo = slope_gap(lo), ghi = slope_gap(hi);
  if (glo == 0.0) {
    lb.x0 = lo;
  } else if (ghi == 0.0) {
    lb.x0 = hi;
  } else if (glo * ghi > 0.0) {
    throw NoTangentPoint("chord_tangent: derivative of " + f.name() +
                         " never crosses the chord slope inside [m, M]");
  } else {
    while (hi - lo > 1e-12) {
      const double mid = 0.5 * (lo + hi);
      const double gm = slope_gap(mid);
      if (gm == 0.0) {
        lo = hi = mid;
        break;
      }
      if (glo * gm < 0.0) {
        hi = mid;
      } else {
        lo = mid;
        glo = gm;
      }
    }
    lb.x0 = 0.5 * (lo + hi);
  }
  lb.b_prime = f(lb.x0) - lb.a * lb.x0;
  return lb;
}

Envelope build_envelope(const ScalarFunction& f, double m, double M, int degree,
                        double target_eps) {
  if (!(m <= M)) throw ValidationError("build_envelope needs m <= M");
  if (degree < 0) throw ValidationError("build_envelope needs degree >= 0");
  if (!f.domain_contains(Interval{m, M}))
    throw DomainViolation("build_envelope: [m, M] escapes the domain of " + f.name());

  Envelope env;
  env.f = f;
  env.interval = {m, M};

  if (is_degenerate(m, M)) {
    env.lower = env.upper = Polynomial::constant(f(m));
    env.eps = 0.0;
    return env;
  }

  // Chebyshev nodes of the first kind, mapped onto [m, M].
  const int n = degree + 1;
  const double mid = 0.5 * (m + M), half = 0.5 * (M - m);
  std::vector<double> xs(n), ys(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = mid + half * std::cos(M_PI * (2.0 * i + 1.0) / (2.0 * n));
    ys[i] = f(xs[i]);
  }
  const Polynomial p = (n == 1) ? Polynomial::constant(f(mid)) : interpolate(xs, ys);

  const double e_above = sup_on_interval([&](double x) { return f(x) - p(x); }, m, M);
  const double e_below = sup_on_interval([&](double x) { return p(x) - f(x); }, m, M);
  const double e = std::max({e_above, e_below, 0.0});

  const double shift = e * kMargin;
  env.upper = p.shifted(shift);
  env.lower = p.shifted(-shift);
  env.eps = 2.0 * shift;
  if (env.eps > target_eps)
    throw EpsNotAchievable("build_envelope: achieved width " + std::to_string(env.eps) +
                               " exceeds the target " + std::to_string(target_eps),
                           env.eps);
  return env;
}

Envelope envelope_from_chord_tangent(const ScalarFunction& f, double m, double M) {
  const LinearBound lb = chord_tangent(f, m, M);
  Envelope env;
  env.f = f;
  env.interval = {m, M};
  env.upper = Polynomial::line(lb.a, lb.b);
  env.lower = Polynomial::line(lb.a, lb.b_prime);
  const double above = sup_on_interval([&](double x) { return env.upper(x) - f(x); }, m, M);
  const double below = sup_on_interval([&](double x) { return f(x) - env.lower(x); }, m, M);
  env.eps = std::max({above, below, 0.0});
  return env;
}

void validate_envelope(const Envelope& env, int samples) {
  const double m = env.interval.lo, M = env.interval.hi;
  if (!(m <= M)) throw ValidationError("envelope interval has lo > hi");
  if (!(env.eps >= 0.0)) throw ValidationError("envelope width is negative");
  if (!env.f.domain_contains(env.interval))
    throw ValidationError("envelope interval escapes the domain of " + env.f.name());
  const int cells = std::max(1, samples);
  for (int i = 0; i <= cells; ++i) {
    const double x = (i == cells) ? M : m + (M - m) * i / cells;
    const double fx = env.f(x);
    const double slack = 1e-12 * std::max(1.0, std::abs(fx)) + 1e-9 * env.eps;
    const double below = fx - env.lower(x);   // must sit in [0, eps]
    const double above = env.upper(x) - fx;   // must sit in [0, eps]
    if (below < -slack || below > env.eps + slack || above < -slack || above > env.eps + slack)
      throw ValidationError("envelope inequality fails at x = " + std::to_string(x));
  }
}

}  // namespace opjensen
