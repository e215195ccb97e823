#include "opjensen/converse.hpp"

#include <cmath>

#include "opjensen/errors.hpp"
#include "opjensen/optimize.hpp"

namespace opjensen {

namespace {

void check_spectrum_in_window(const HermitianOperator& A, const Interval& window, size_t j) {
  const Interval spec = spectrum_bounds(A);
  const double slack = 1e-9 * std::max({1.0, std::abs(window.lo), std::abs(window.hi)});
  if (spec.lo < window.lo - slack || spec.hi > window.hi + slack)
    throw ValidationError("ensemble member " + std::to_string(j) + " has spectrum [" +
                          std::to_string(spec.lo) + ", " + std::to_string(spec.hi) +
                          "] outside its declared window");
}

const ScalarFunction& common_f(const std::vector<Envelope>& envs) {
  const std::string name = envs.front().f.name();
  for (const Envelope& env : envs)
    if (env.f.name() != name)
      throw ValidationError("per-member envelopes disagree on the enveloped function");
  return envs.front().f;
}

void check_env_alignment(const WeightedEnsemble& ens, const std::vector<Envelope>& envs) {
  if (envs.size() != ens.size())
    throw ValidationError("need exactly one envelope per ensemble member");
  for (size_t j = 0; j < ens.size(); ++j) {
    const Interval& w = ens.member(j).window;
    const Interval& e = envs[j].interval;
    const double slack = 1e-12 * std::max(1.0, std::abs(w.hi));
    if (std::abs(w.lo - e.lo) > slack || std::abs(w.hi - e.hi) > slack)
      throw ValidationError("envelope " + std::to_string(j) +
                            " is not built on its member's window");
  }
}

// Declared sign check for g on an interval; returns the image.
Interval check_g_sign(const ScalarFunction& g, const Interval& iv, GSign sign) {
  if (!g.domain_contains(iv))
    throw DomainViolation("interval escapes the domain of " + g.name());
  const Interval img = function_range(g, iv.lo, iv.hi);
  if (sign == GSign::Positive && !(img.lo > 0.0))
    throw SignViolation(g.name() + " is declared positive but reaches " +
                        std::to_string(img.lo) + " on the interval");
  if (sign == GSign::Negative && !(img.hi < 0.0))
    throw SignViolation(g.name() + " is declared negative but reaches " +
                        std::to_string(img.hi) + " on the interval");
  return img;
}

void check_definite(const HermitianOperator& gT, GSign sign, const std::string& what) {
  const Interval spec = spectrum_bounds(gT);
  const double floor = 1e-10;
  if (sign == GSign::Positive && !(spec.lo > floor))
    throw SignViolation(what + " must be positive definite; min eigenvalue " +
                        std::to_string(spec.lo));
  if (sign == GSign::Negative && !(spec.hi < -floor))
    throw SignViolation(what + " must be negative definite; max eigenvalue " +
                        std::to_string(spec.hi));
}

OptimizeMode ratio_mode(Side side, GSign sign) {
  const bool upper = (side == Side::Upper);
  const bool positive = (sign == GSign::Positive);
  return (upper == positive) ? OptimizeMode::Maximize : OptimizeMode::Minimize;
}

BoundCertificate certify_pair(BoundKind kind, BoundForm form, std::string detail,
                              const ScalarConstant& c, HermitianOperator subject,
                              HermitianOperator bound, Side side, double tol_scale) {
  const double tol = certification_tol(subject, bound, tol_scale);
  const OrderCertificate cert = (side == Side::Upper) ? loewner_leq(subject, bound, tol)
                                                      : loewner_leq(bound, subject, tol);
  return {kind, form, std::move(detail), c.value, c.x_star,
          std::move(subject), std::move(bound), cert};
}

// Compression S = sum_j w_j V^T A_j V used by the example forms.
HermitianOperator compressed_mean(const WeightedEnsemble& ens, const PhiMap& phi) {
  if (!phi.is_positive_linear())
    throw ValidationError(
        "example-form certificates need a plain compression map (coefficients {0, 1})");
  return ensemble_lhs(ens, phi, ScalarFunction::identity());
}

}  // namespace

WeightedEnsemble::WeightedEnsemble(std::vector<EnsembleMember> members,
                                   std::vector<double> weights)
    : members_(std::move(members)), weights_(std::move(weights)) {
  if (members_.empty()) throw ValidationError("ensemble must have at least one member");
  if (weights_.size() != members_.size())
    throw ValidationError("ensemble needs one weight per member");
  double total = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0)) throw ValidationError("ensemble weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw ValidationError("ensemble weights sum to " + std::to_string(total) +
                          ", expected 1 within 1e-12");
  const int n = members_.front().A.dim();
  for (size_t j = 0; j < members_.size(); ++j) {
    if (members_[j].A.dim() != n)
      throw DimensionMismatch("ensemble members have mixed dimensions");
    if (!members_[j].window.valid())
      throw ValidationError("ensemble member window has lo > hi");
    check_spectrum_in_window(members_[j].A, members_[j].window, j);
  }
}

Interval WeightedEnsemble::window_hull() const {
  Interval h = members_.front().window;
  for (const auto& m : members_) h = hull(h, m.window);
  return h;
}

HermitianOperator ensemble_lhs(const WeightedEnsemble& ens, const PhiMap& phi,
                               const ScalarFunction& f) {
  if (ens.dim() != phi.input_dim())
    throw DimensionMismatch("ensemble dimension does not match the map input");
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(phi.output_dim(), phi.output_dim());
  for (size_t j = 0; j < ens.size(); ++j) {
    const HermitianOperator fA = apply_scalar(f, ens.member(j).A);
    acc += ens.weight(j) * phi.apply(fA).matrix();
  }
  return HermitianOperator(0.5 * (acc + acc.transpose()));
}

std::vector<Envelope> make_envelopes(const WeightedEnsemble& ens, const ScalarFunction& f,
                                     int degree, double target_eps) {
  std::vector<Envelope> envs;
  envs.reserve(ens.size());
  for (size_t j = 0; j < ens.size(); ++j) {
    const Interval& w = ens.member(j).window;
    envs.push_back(build_envelope(f, w.lo, w.hi, degree, target_eps));
  }
  return envs;
}

EnsembleSandwich ensemble_sandwich(const WeightedEnsemble& ens, const PhiMap& phi,
                                   const std::vector<Envelope>& envs, Side side) {
  check_env_alignment(ens, envs);
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(phi.output_dim(), phi.output_dim());
  double lo = 0.0, hi = 0.0;
  for (size_t j = 0; j < ens.size(); ++j) {
    const Polynomial s = sandwich_scalar_poly(phi, envs[j], side);
    const Interval img = function_range(ScalarFunction::poly(s), envs[j].interval.lo,
                                        envs[j].interval.hi);
    const HermitianOperator member_op =
        phi.compress(apply_polynomial(s, ens.member(j).A));
    acc += ens.weight(j) * member_op.matrix();
    lo += ens.weight(j) * img.lo;
    hi += ens.weight(j) * img.hi;
  }
  return {HermitianOperator(0.5 * (acc + acc.transpose())), Interval{lo, hi}};
}

BoundCertificate general_bound(const WeightedEnsemble& ens, const PhiMap& phi,
                               const std::vector<Envelope>& envs, const ScalarFunction& g,
                               const FFamily& F, Side side) {
  const ScalarFunction& f = common_f(envs);
  const HermitianOperator lhs = ensemble_lhs(ens, phi, f);
  const EnsembleSandwich sw = ensemble_sandwich(ens, phi, envs, side);
  if (!g.domain_contains(sw.range))
    throw DomainViolation("sandwich range escapes the domain of " + g.name());

  const HermitianOperator gT = apply_scalar(g, sw.op);
  const OptimizeMode mode =
      (side == Side::Upper) ? OptimizeMode::Maximize : OptimizeMode::Minimize;

  HermitianOperator expr = lhs;  // overwritten below
  ScalarConstant c;
  if (F.kind == FFamily::Kind::CongruenceRatio) {
    const Interval gimg = function_range(g, sw.range.lo, sw.range.hi);
    if (!(gimg.lo > 0.0))
      throw NonPositiveG("congruence comparison needs g > 0 on the sandwich range; " +
                         g.name() + " reaches " + std::to_string(gimg.lo));
    const HermitianOperator w = apply_scalar(ScalarFunction::power(-0.5), gT);
    const Eigen::MatrixXd congr = w.matrix() * lhs.matrix() * w.matrix();
    expr = HermitianOperator(0.5 * (congr + congr.transpose()));
    const Optimum opt = scalar_optimize([&g](double x) { return x / g(x); },
                                        {sw.range}, mode);
    c = {opt.value, opt.x};
  } else {
    expr = lhs - gT.scaled(F.alpha);
    const double alpha = F.alpha;
    const Optimum opt = scalar_optimize([&g, alpha](double x) { return x - alpha * g(x); },
                                        {sw.range}, mode);
    c = {opt.value, opt.x};
  }

  const HermitianOperator bound =
      HermitianOperator::scaled_identity(expr.dim(), c.value);
  const BoundKind kind =
      (side == Side::Upper) ? BoundKind::GeneralUpper : BoundKind::GeneralLower;
  return certify_pair(kind, BoundForm::Theorem,
                      F.kind == FFamily::Kind::CongruenceRatio ? "congruence"
                                                               : "difference",
                      c, expr, bound, side, 1.0);
}

BoundCertificate alpha_bound(const WeightedEnsemble& ens, const PhiMap& phi,
                             const std::vector<Envelope>& envs, const ScalarFunction& g,
                             double alpha, Side side) {
  BoundCertificate cert = general_bound(ens, phi, envs, g, FFamily::difference(alpha), side);
  cert.kind = (side == Side::Upper) ? BoundKind::AlphaUpper : BoundKind::AlphaLower;
  return cert;
}

BoundCertificate gated_alpha_bound(const WeightedEnsemble& ens, const PhiMap& phi,
                                   const std::vector<Envelope>& envs, const ScalarFunction& g,
                                   double alpha, Side side) {
  const EnsembleSandwich up = ensemble_sandwich(ens, phi, envs, Side::Upper);
  const EnsembleSandwich low = ensemble_sandwich(ens, phi, envs, Side::Lower);
  const Interval combined = hull(up.range, low.range);

  std::string gate;
  switch (g.tag()) {
    case ScalarFunction::Tag::Power:
      if (!(combined.lo >= 0.0))
        throw RangeSignViolation("power target needs the combined sandwich range >= 0; it "
                                 "reaches " + std::to_string(combined.lo));
      gate = "power gate: combined range >= 0";
      break;
    case ScalarFunction::Tag::Log:
      if (!(combined.lo > 0.0))
        throw RangeSignViolation("log target needs the combined sandwich range > 0; it "
                                 "reaches " + std::to_string(combined.lo));
      gate = "log gate: combined range > 0";
      break;
    case ScalarFunction::Tag::Exp:
      gate = "exp: no gate";
      break;
    default:
      throw ValidationError("gated bounds cover power, log and exp targets only, got " +
                            g.name());
  }
  BoundCertificate cert = alpha_bound(ens, phi, envs, g, alpha, side);
  cert.detail = "g=" + g.name() + "; " + gate;
  return cert;
}

ScalarConstant ratio_constant(const Polynomial& numerator, const ScalarFunction& g,
                              const Interval& iv, Side side, GSign sign) {
  if (!iv.valid()) throw ValidationError("ratio_constant interval has lo > hi");
  check_g_sign(g, iv, sign);
  const Optimum opt = scalar_optimize(
      [&numerator, &g](double x) { return numerator(x) / g(x); }, {iv},
      ratio_mode(side, sign));
  return {opt.value, opt.x};
}

ScalarConstant difference_constant(const Polynomial& numerator, const ScalarFunction& g,
                                   const Interval& iv, Side side) {
  if (!iv.valid()) throw ValidationError("difference_constant interval has lo > hi");
  if (!g.domain_contains(iv))
    throw DomainViolation("interval escapes the domain of " + g.name());
  const OptimizeMode mode =
      (side == Side::Upper) ? OptimizeMode::Maximize : OptimizeMode::Minimize;
  const Optimum opt = scalar_optimize(
      [&numerator, &g](double x) { return numerator(x) - g(x); }, {iv}, mode);
  return {opt.value, opt.x};
}

std::pair<BoundCertificate, BoundCertificate> ratio_certify_theorem(
    const WeightedEnsemble& ens, const PhiMap& phi, const std::vector<Envelope>& envs,
    const ScalarFunction& g, GSign sign) {
  const ScalarFunction& f = common_f(envs);
  const HermitianOperator lhs = ensemble_lhs(ens, phi, f);

  const EnsembleSandwich swU = ensemble_sandwich(ens, phi, envs, Side::Upper);
  const EnsembleSandwich swL = ensemble_sandwich(ens, phi, envs, Side::Lower);

  check_g_sign(g, swU.range, sign);
  check_g_sign(g, swL.range, sign);
  const HermitianOperator gTU = apply_scalar(g, swU.op);
  const HermitianOperator gTL = apply_scalar(g, swL.op);
  check_definite(gTU, sign, "g of the upper sandwich operator");
  check_definite(gTL, sign, "g of the lower sandwich operator");

  const Optimum a1 = scalar_optimize([&g](double x) { return x / g(x); }, {swU.range},
                                     ratio_mode(Side::Upper, sign));
  const Optimum a2 = scalar_optimize([&g](double x) { return x / g(x); }, {swL.range},
                                     ratio_mode(Side::Lower, sign));

  BoundCertificate upper =
      certify_pair(BoundKind::RatioUpper, BoundForm::Theorem, "g=" + g.name(),
                   {a1.value, a1.x}, lhs, gTU.scaled(a1.value), Side::Upper, 1.0);
  BoundCertificate lower =
      certify_pair(BoundKind::RatioLower, BoundForm::Theorem, "g=" + g.name(),
                   {a2.value, a2.x}, lhs, gTL.scaled(a2.value), Side::Lower, 1.0);
  return {std::move(upper), std::move(lower)};
}

std::pair<BoundCertificate, BoundCertificate> ratio_certify_example(
    const WeightedEnsemble& ens, const PhiMap& phi, const ScalarFunction& f,
    const ScalarFunction& g, GSign sign) {
  const Interval hull_iv = ens.window_hull();
  const LinearBound lb = chord_tangent(f, hull_iv.lo, hull_iv.hi);
  const HermitianOperator lhs = ensemble_lhs(ens, phi, f);
  const HermitianOperator S = compressed_mean(ens, phi);

  const ScalarConstant a1 = ratio_constant(Polynomial::line(lb.a, lb.b), g, hull_iv,
                                           Side::Upper, sign);
  const ScalarConstant a2 = ratio_constant(Polynomial::line(lb.a, lb.b_prime), g, hull_iv,
                                           Side::Lower, sign);

  const HermitianOperator gS = apply_scalar(g, S);
  check_definite(gS, sign, "g of the compressed mean");

  BoundCertificate upper =
      certify_pair(BoundKind::RatioUpper, BoundForm::Example, "g=" + g.name(), a1, lhs,
                   gS.scaled(a1.value), Side::Upper, 1.0);
  BoundCertificate lower =
      certify_pair(BoundKind::RatioLower, BoundForm::Example, "g=" + g.name(), a2, lhs,
                   gS.scaled(a2.value), Side::Lower, 1.0);
  return {std::move(upper), std::move(lower)};
}

std::pair<BoundCertificate, BoundCertificate> difference_certify_theorem(
    const WeightedEnsemble& ens, const PhiMap& phi, const std::vector<Envelope>& envs,
    const ScalarFunction& g) {
  const ScalarFunction& f = common_f(envs);
  const HermitianOperator lhs = ensemble_lhs(ens, phi, f);

  const EnsembleSandwich swU = ensemble_sandwich(ens, phi, envs, Side::Upper);
  const EnsembleSandwich swL = ensemble_sandwich(ens, phi, envs, Side::Lower);
  if (!g.domain_contains(swU.range) || !g.domain_contains(swL.range))
    throw DomainViolation("sandwich range escapes the domain of " + g.name());

  const HermitianOperator gTU = apply_scalar(g, swU.op);
  const HermitianOperator gTL = apply_scalar(g, swL.op);

  const Optimum b1 = scalar_optimize([&g](double x) { return x - g(x); }, {swU.range},
                                     OptimizeMode::Maximize);
  const Optimum b2 = scalar_optimize([&g](double x) { return x - g(x); }, {swL.range},
                                     OptimizeMode::Minimize);

  const HermitianOperator exprU = lhs - gTU;
  const HermitianOperator exprL = lhs - gTL;
  BoundCertificate upper = certify_pair(
      BoundKind::DifferenceUpper, BoundForm::Theorem, "g=" + g.name(), {b1.value, b1.x},
      exprU, HermitianOperator::scaled_identity(exprU.dim(), b1.value), Side::Upper, 1.0);
  BoundCertificate lower = certify_pair(
      BoundKind::DifferenceLower, BoundForm::Theorem, "g=" + g.name(), {b2.value, b2.x},
      exprL, HermitianOperator::scaled_identity(exprL.dim(), b2.value), Side::Lower, 1.0);
  return {std::move(upper), std::move(lower)};
}

std::pair<BoundCertificate, BoundCertificate> difference_certify_example(
    const WeightedEnsemble& ens, const PhiMap& phi, const ScalarFunction& f,
    const ScalarFunction& g) {
  const Interval hull_iv = ens.window_hull();
  const LinearBound lb = chord_tangent(f, hull_iv.lo, hull_iv.hi);
  const HermitianOperator lhs = ensemble_lhs(ens, phi, f);
  const HermitianOperator S = compressed_mean(ens, phi);
  if (!g.domain_contains(hull_iv))
    throw DomainViolation("window hull escapes the domain of " + g.name());
  const HermitianOperator gS = apply_scalar(g, S);

  const ScalarConstant b1 =
      difference_constant(Polynomial::line(lb.a, lb.b), g, hull_iv, Side::Upper);
  const ScalarConstant b2 =
      difference_constant(Polynomial::line(lb.a, lb.b_prime), g, hull_iv, Side::Lower);

  const HermitianOperator expr = lhs - gS;
  BoundCertificate upper = certify_pair(
      BoundKind::DifferenceUpper, BoundForm::Example, "g=" + g.name(), b1, expr,
      HermitianOperator::scaled_identity(expr.dim(), b1.value), Side::Upper, 1.0);
  BoundCertificate lower = certify_pair(
      BoundKind::DifferenceLower, BoundForm::Example, "g=" + g.name(), b2, expr,
      HermitianOperator::scaled_identity(expr.dim(), b2.value), Side::Lower, 1.0);
  return {std::move(upper), std::move(lower)};
}

std::string to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::GeneralUpper: return "general_upper";
    case BoundKind::GeneralLower: return "general_lower";
    case BoundKind::AlphaUpper: return "alpha_upper";
    case BoundKind::AlphaLower: return "alpha_lower";
    case BoundKind::RatioUpper: return "ratio_upper";
    case BoundKind::RatioLower: return "ratio_lower";
    case BoundKind::DifferenceUpper: return "difference_upper";
    case BoundKind::DifferenceLower: return "difference_lower";
  }
  return "unknown";
}

std::string to_string(BoundForm form) {
  return form == BoundForm::Theorem ? "theorem" : "example";
}

}  // namespace opjensen
