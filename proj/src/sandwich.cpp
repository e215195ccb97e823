#include "opjensen/sandwich.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "opjensen/errors.hpp"
#include "opjensen/kantorovich.hpp"
#include "opjensen/optimize.hpp"

namespace opjensen {

namespace {

// Relative slack when checking that a spectrum sits inside a window: admits
// eigenvalues that equal an endpoint up to eigensolver roundoff.
double window_slack(const Interval& iv) {
  return 1e-9 * std::max({1.0, std::abs(iv.lo), std::abs(iv.hi)});
}

void check_spectrum_in_window(const Interval& spec, const Interval& window,
                              const char* what) {
  const double slack = window_slack(window);
  if (spec.lo < window.lo - slack || spec.hi > window.hi + slack)
    throw DomainViolation(std::string(what) + ": spectrum [" + std::to_string(spec.lo) + ", " +
                          std::to_string(spec.hi) + "] escapes the window [" +
                          std::to_string(window.lo) + ", " + std::to_string(window.hi) + "]");
}

struct SideEndpoints {
  Interval upper;  // spectrum / image of the upper polynomial
  Interval lower;  // spectrum / image of the lower polynomial
};

void require_positive(const Interval& image, const char* which) {
  if (!(image.lo > 0.0))
    throw NonPositiveSpectrum(std::string("sandwich: the ") + which +
                              " polynomial image reaches down to " + std::to_string(image.lo) +
                              "; it must be strictly positive");
}

}  // namespace

RangeSet RangeSet::of(std::vector<Interval> intervals) {
  for (const Interval& iv : intervals)
    if (!iv.valid()) throw ValidationError("range set interval has lo > hi");
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  RangeSet out;
  for (const Interval& iv : intervals) {
    if (!out.parts.empty() && iv.lo <= out.parts.back().hi)
      out.parts.back().hi = std::max(out.parts.back().hi, iv.hi);
    else
      out.parts.push_back(iv);
  }
  return out;
}

Interval RangeSet::hull() const {
  if (parts.empty()) throw ValidationError("empty range set has no hull");
  return {parts.front().lo, parts.back().hi};
}

bool RangeSet::contains(double x) const {
  for (const Interval& iv : parts)
    if (iv.contains(x)) return true;
  return false;
}

SandwichPair build_sandwich(const PhiMap& phi, const Envelope& env,
                            const HermitianOperator& A) {
  if (A.dim() != phi.input_dim())
    throw DimensionMismatch("build_sandwich: input is " + std::to_string(A.dim()) + "x" +
                            std::to_string(A.dim()) + " but the map expects " +
                            std::to_string(phi.input_dim()));
  const auto sd = spectral_decompose(A);
  const int n = A.dim();
  check_spectrum_in_window({sd.eigenvalues(0), sd.eigenvalues(n - 1)}, env.interval,
                           "build_sandwich");

  // Spectra of the envelope polynomials under A, via spectral mapping.
  SideEndpoints ep;
  {
    double ulo = env.upper(sd.eigenvalues(0)), uhi = ulo;
    double llo = env.lower(sd.eigenvalues(0)), lhi = llo;
    for (int i = 1; i < n; ++i) {
      const double u = env.upper(sd.eigenvalues(i));
      const double l = env.lower(sd.eigenvalues(i));
      ulo = std::min(ulo, u);
      uhi = std::max(uhi, u);
      llo = std::min(llo, l);
      lhi = std::max(lhi, l);
    }
    ep.upper = {ulo, uhi};
    ep.lower = {llo, lhi};
  }
  require_positive(ep.upper, "upper");
  require_positive(ep.lower, "lower");

  const auto& a = phi.coeffs();
  const int deg = phi.degree();
  std::vector<double> kU(deg + 1, 1.0), kL(deg + 1, 1.0);
  for (int i = 0; i <= deg; ++i) {
    const double ku = kantorovich(ep.upper.lo, ep.upper.hi, i);
    const double kl = kantorovich(ep.lower.lo, ep.lower.hi, i);
    if (a[i] >= 0.0) {
      kU[i] = ku;        // upper side: inflate nonnegative terms of p_U(A)^i
      kL[i] = 1.0 / kl;  // lower side: deflate them on p_L(A)^i
    } else {
      kU[i] = 1.0 / kl;  // upper side: negative terms ride on p_L(A)^i
      kL[i] = ku;        // lower side: negative terms ride on p_U(A)^i
    }
  }

  const Eigen::MatrixXd BU = apply_polynomial(env.upper, A).matrix();
  const Eigen::MatrixXd BL = apply_polynomial(env.lower, A).matrix();
  Eigen::MatrixXd powU = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd powL = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd upper = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd lower = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i <= deg; ++i) {
    if (i > 0) {
      powU = powU * BU;
      powL = powL * BL;
    }
    if (a[i] >= 0.0) {
      upper += a[i] * kU[i] * powU;
      lower += a[i] * kL[i] * powL;
    } else {
      upper += a[i] * kU[i] * powL;
      lower += a[i] * kL[i] * powU;
    }
  }

  SandwichPair out{
      HermitianOperator(0.5 * (upper + upper.transpose())),
      HermitianOperator(0.5 * (lower + lower.transpose())),
      HermitianOperator::identity(1),  // placeholders, replaced below
      HermitianOperator::identity(1),
      std::move(kU),
      std::move(kL),
  };
  out.upper_op = phi.compress(out.upper_raw);
  out.lower_op = phi.compress(out.lower_raw);
  return out;
}

Polynomial sandwich_scalar_poly(const PhiMap& phi, const Envelope& env, Side side) {
  const double m = env.interval.lo, M = env.interval.hi;
  const Interval imgU = function_range(ScalarFunction::poly(env.upper), m, M);
  const Interval imgL = function_range(ScalarFunction::poly(env.lower), m, M);
  require_positive(imgU, "upper");
  require_positive(imgL, "lower");

  const auto& a = phi.coeffs();
  Polynomial acc;  // zero
  Polynomial powU = Polynomial::constant(1.0);
  Polynomial powL = Polynomial::constant(1.0);
  for (int i = 0; i <= phi.degree(); ++i) {
    if (i > 0) {
      powU = powU * env.upper;
      powL = powL * env.lower;
    }
    const double ku = kantorovich(imgU.lo, imgU.hi, i);
    const double kl = kantorovich(imgL.lo, imgL.hi, i);
    const bool plus = a[i] >= 0.0;
    if (side == Side::Upper) {
      if (plus)
        acc = acc + powU.scaled(a[i] * ku);
      else
        acc = acc + powL.scaled(a[i] / kl);
    } else {
      if (plus)
        acc = acc + powL.scaled(a[i] / kl);
      else
        acc = acc + powU.scaled(a[i] * ku);
    }
  }
  return acc;
}

RangeSet sandwich_range(const PhiMap& phi, const Envelope& env, Side side) {
  const Polynomial s = sandwich_scalar_poly(phi, env, side);
  const Interval img =
      function_range(ScalarFunction::poly(s), env.interval.lo, env.interval.hi);
  return RangeSet::of({img});
}

}  // namespace opjensen
