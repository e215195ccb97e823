#include "opjensen/bounds_algebra.hpp"

#include <cmath>

#include "opjensen/errors.hpp"
#include "opjensen/optimize.hpp"

namespace opjensen {

namespace {

void check_valid(const Interval& p, const char* what) {
  if (!p.valid() || !std::isfinite(p.lo) || !std::isfinite(p.hi))
    throw ValidationError(std::string(what) + ": interval must be finite with lo <= hi");
}

BoundCertificate make_cert(const char* detail, double constant,
                           const HermitianOperator& subject, const HermitianOperator& bound,
                           Side side) {
  const double tol = certification_tol(subject, bound);
  const OrderCertificate oc = (side == Side::Upper) ? loewner_leq(subject, bound, tol)
                                                    : loewner_leq(bound, subject, tol);
  const BoundKind kind = (side == Side::Upper) ? BoundKind::RatioUpper : BoundKind::RatioLower;
  return {kind, BoundForm::Example, detail, constant, 0.0, subject, bound, oc};
}

}  // namespace

Interval interval_add(const Interval& p, const Interval& q) {
  check_valid(p, "interval_add");
  check_valid(q, "interval_add");
  return {p.lo + q.lo, p.hi + q.hi};
}

Interval interval_mul(const Interval& p, const Interval& q) {
  check_valid(p, "interval_mul");
  check_valid(q, "interval_mul");
  if (!(p.lo > 0.0) || !(q.lo > 0.0))
    throw PositivityViolation("interval_mul is defined for strictly positive intervals");
  return {p.lo * q.lo, p.hi * q.hi};
}

Interval coeff_interval(const LinearBound& lb, const ScalarFunction& g, const Interval& iv) {
  const ScalarConstant lo =
      ratio_constant(Polynomial::line(lb.a, lb.b_prime), g, iv, Side::Lower, GSign::Positive);
  const ScalarConstant hi =
      ratio_constant(Polynomial::line(lb.a, lb.b), g, iv, Side::Upper, GSign::Positive);
  return {lo.value, hi.value};
}

CombinedCertificates certify_combined(const WeightedEnsemble& ens, const PhiMap& phi,
                                      const ScalarFunction& f, const ScalarFunction& h,
                                      const ScalarFunction& g) {
  if (!phi.is_positive_linear())
    throw ValidationError("combined certificates need a plain compression map");
  const Interval hull_iv = ens.window_hull();

  const LinearBound lbf = chord_tangent(f, hull_iv.lo, hull_iv.hi);
  const LinearBound lbh = chord_tangent(h, hull_iv.lo, hull_iv.hi);
  const Interval fiv = coeff_interval(lbf, g, hull_iv);
  const Interval hiv = coeff_interval(lbh, g, hull_iv);
  const Interval sum = interval_add(fiv, hiv);

  const HermitianOperator F = ensemble_lhs(ens, phi, f);
  const HermitianOperator H = ensemble_lhs(ens, phi, h);
  const HermitianOperator S = ensemble_lhs(ens, phi, ScalarFunction::identity());
  const HermitianOperator gS = apply_scalar(g, S);
  const HermitianOperator FH = F + H;

  CombinedCertificates out{
      fiv,
      hiv,
      sum,
      std::nullopt,
      make_cert("combined:add", sum.hi, FH, gS.scaled(sum.hi), Side::Upper),
      make_cert("combined:add", sum.lo, FH, gS.scaled(sum.lo), Side::Lower),
      std::nullopt,
      std::nullopt,
      false,
      "",
  };

  const double comm_tol = 1e-8 * std::max({1.0, F.max_abs(), H.max_abs(), gS.max_abs()});
  out.commuting = commutator_norm(F, H) <= comm_tol &&
                  commutator_norm(F, gS) <= comm_tol &&
                  commutator_norm(H, gS) <= comm_tol;
  if (!out.commuting) {
    out.skip_reason = "witnesses do not commute; operator products do not respect the order";
    return out;
  }
  try {
    const Interval prod = interval_mul(fiv, hiv);
    const HermitianOperator P = symmetrized_product(F, H);
    const HermitianOperator G2 = symmetrized_product(gS, gS);
    out.prod_interval = prod;
    out.mul_upper =
        make_cert("combined:mul", prod.hi, P, G2.scaled(prod.hi), Side::Upper);
    out.mul_lower =
        make_cert("combined:mul", prod.lo, P, G2.scaled(prod.lo), Side::Lower);
  } catch (const PositivityViolation& e) {
    out.skip_reason = std::string("product skipped: ") + e.what();
  }
  return out;
}

}  // namespace opjensen
