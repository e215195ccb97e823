#pragma once

#include <optional>

#include "opjensen/converse.hpp"

namespace opjensen {

// Closed-interval arithmetic for certified coefficient ranges.
//   interval_add: Minkowski sum [lo+lo, hi+hi].
//   interval_mul: product for strictly positive intervals only, [lo*lo,
//   hi*hi]; PositivityViolation otherwise.  Both operations are commutative
//   and associative with neutral elements [0,0] and [1,1].
Interval interval_add(const Interval& p, const Interval& q);
Interval interval_mul(const Interval& p, const Interval& q);

// Certified coefficient range of f against a positive g on the interval:
//   lo = min over iv of tangent(x)/g(x),  hi = max over iv of chord(x)/g(x),
// where chord/tangent come from the supplied linear bound of f.  Every x in
// iv then satisfies  lo * g(x) <= tangent(x) <= f(x) <= chord(x) <= hi * g(x).
Interval coeff_interval(const LinearBound& lb, const ScalarFunction& g, const Interval& iv);

// Combined certificates for two enveloped functions f and h over the same
// ensemble (plain compression map, positive g):
//
//   addition (any ensemble):
//     sum.lo * g(S) <= F + H <= sum.hi * g(S),
//     F = sum_j w_j V^T f(A_j) V, H likewise, S = sum_j w_j V^T A_j V;
//
//   multiplication (commuting witnesses only): when F, H and g(S) pairwise
//     commute and the coefficient intervals are strictly positive,
//     prod.lo * g(S)^2 <= sym(F*H) <= prod.hi * g(S)^2.
//
// Operator products do not respect the Loewner order in general, so when the
// witnesses fail to commute the product certificates are skipped and
// `commuting` is false; `skip_reason` says why they are absent.
struct CombinedCertificates {
  Interval f_interval;
  Interval h_interval;
  Interval sum_interval;
  std::optional<Interval> prod_interval;
  BoundCertificate add_upper;
  BoundCertificate add_lower;
  std::optional<BoundCertificate> mul_upper;
  std::optional<BoundCertificate> mul_lower;
  bool commuting = false;
  std::string skip_reason;
};

CombinedCertificates certify_combined(const WeightedEnsemble& ens, const PhiMap& phi,
                                      const ScalarFunction& f, const ScalarFunction& h,
                                      const ScalarFunction& g);

}  // namespace opjensen
