#include "opjensen/tail_mc.hpp"

#include <algorithm>
#include <cmath>

#include "opjensen/converse.hpp"
#include "opjensen/envelope.hpp"
#include "opjensen/errors.hpp"
#include "opjensen/optimize.hpp"
#include "opjensen/parallel.hpp"
#include "opjensen/rng.hpp"

namespace opjensen {

namespace {

Eigen::MatrixXd haar_like_basis(int n, Rng& rng) {
  Eigen::MatrixXd G(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) G(i, j) = rng.gaussian();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
  Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd R = Q.transpose() * G;
  for (int j = 0; j < n; ++j)
    if (R(j, j) < 0.0) Q.col(j) = -Q.col(j);
  return Q;
}

Eigen::VectorXd uniform_spectrum(int n, double m, double M, Rng& rng) {
  Eigen::VectorXd evals(n);
  for (int i = 0; i < n; ++i) evals(i) = rng.uniform(m, M);
  return evals;
}

void check_spec(const TailSpec& spec) {
  if (spec.n < 1) throw ValidationError("tail spec needs n >= 1");
  if (spec.k < 1) throw ValidationError("tail spec needs k >= 1");
  if (spec.trials < 1) throw ValidationError("tail spec needs trials >= 1");
  if (!(spec.m <= spec.M)) throw ValidationError("tail spec needs m <= M");
  if (static_cast<int>(spec.weights.size()) != spec.k)
    throw ValidationError("tail spec needs one weight per ensemble member");
  double total = 0.0;
  for (double w : spec.weights) {
    if (!(w >= 0.0)) throw ValidationError("tail weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw ValidationError("tail weights must sum to 1 within 1e-12");
}

// 95% Wilson half-width for a count of `hits` out of `n`.
double wilson_halfwidth(int hits, int n) {
  const double z = 1.959963984540054;  // standard normal 97.5% quantile
  const double z2 = z * z;
  const double phat = static_cast<double>(hits) / n;
  const double denom = 1.0 + z2 / n;
  return z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * static_cast<double>(n) * n)) /
         denom;
}

}  // namespace

double ky_fan_norm(const HermitianOperator& A, int ell) {
  if (ell < 1 || ell > A.dim())
    throw BadEll("ky_fan_norm needs 1 <= ell <= dim, got ell = " + std::to_string(ell) +
                 " with dim = " + std::to_string(A.dim()));
  const auto sd = spectral_decompose(A);
  std::vector<double> sv(sd.eigenvalues.size());
  for (int i = 0; i < sd.eigenvalues.size(); ++i) sv[i] = std::abs(sd.eigenvalues(i));
  std::sort(sv.begin(), sv.end(), std::greater<double>());
  double out = 0.0;
  for (int i = 0; i < ell; ++i) out += sv[i];
  return out;
}

std::vector<TailReport> tail_sweep(const TailSpec& spec, const ScalarFunction& f,
                                   const ScalarFunction& h, const ScalarFunction& g,
                                   int ell, const std::vector<double>& thetas,
                                   TailMode mode) {
  check_spec(spec);
  if (ell < 1 || ell > spec.n) throw BadEll("tail sweep needs 1 <= ell <= n");
  if (thetas.empty()) throw ValidationError("tail sweep needs at least one theta");
  if (mode == TailMode::Multiplication && !spec.commuting)
    throw ValidationError(
        "multiplication tail comparison is certified for commuting ensembles only; set the "
        "commuting flag");
  // The per-draw caps compare Ky Fan norms, which is only one-sided for
  // positive semidefinite left-hand operators; both modes need f, h >= 0.
  if (!(function_range(f, spec.m, spec.M).lo >= 0.0) ||
      !(function_range(h, spec.m, spec.M).lo >= 0.0))
    throw PositivityViolation("tail comparison needs f, h >= 0 on [m, M]");

  // Upper chord-over-g constants on [m, M]; positive g required.
  const LinearBound lbf = chord_tangent(f, spec.m, spec.M);
  const LinearBound lbh = chord_tangent(h, spec.m, spec.M);
  const Interval window{spec.m, spec.M};
  const double af =
      ratio_constant(Polynomial::line(lbf.a, lbf.b), g, window, Side::Upper, GSign::Positive)
          .value;
  const double ah =
      ratio_constant(Polynomial::line(lbh.a, lbh.b), g, window, Side::Upper, GSign::Positive)
          .value;
  if (mode == TailMode::Multiplication && !(af > 0.0 && ah > 0.0))
    throw PositivityViolation("multiplication tail comparison needs positive chord constants");

  // Per-trial statistics.  lhs_stat as documented; rhs_base is |g(mean)|_ell,
  // from which every theta's right-hand event derives.
  std::vector<double> lhs_stat(spec.trials), rhs_base(spec.trials);
  std::vector<char> draw_ok(spec.trials, 0);

  parallel_for(spec.trials, [&](int t) {
    Rng rng(mix_seed(spec.seed, static_cast<uint64_t>(t)));
    const int n = spec.n;
    Eigen::MatrixXd shared_basis;
    if (spec.commuting) shared_basis = haar_like_basis(n, rng);

    Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd F = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < spec.k; ++j) {
      const Eigen::VectorXd evals = uniform_spectrum(n, spec.m, spec.M, rng);
      const Eigen::MatrixXd Q = spec.commuting ? shared_basis : haar_like_basis(n, rng);
      Eigen::VectorXd fe(n), he(n);
      for (int i = 0; i < n; ++i) {
        fe(i) = f(evals(i));
        he(i) = h(evals(i));
      }
      mean += spec.weights[j] * (Q * evals.asDiagonal() * Q.transpose());
      F += spec.weights[j] * (Q * fe.asDiagonal() * Q.transpose());
      H += spec.weights[j] * (Q * he.asDiagonal() * Q.transpose());
    }
    const HermitianOperator Fo(0.5 * (F + F.transpose()));
    const HermitianOperator Ho(0.5 * (H + H.transpose()));
    const HermitianOperator Mo(0.5 * (mean + mean.transpose()));
    const HermitianOperator gM = apply_scalar(g, Mo);

    rhs_base[t] = ky_fan_norm(gM, ell);
    if (mode == TailMode::Addition) {
      lhs_stat[t] = ky_fan_norm(Fo + Ho, ell);
      const double cap = (af + ah) * rhs_base[t];
      draw_ok[t] = lhs_stat[t] <= cap + 1e-9 * std::max(1.0, cap) ? 1 : 0;
    } else {
      lhs_stat[t] = ky_fan_norm(symmetrized_product(Fo, Ho), ell);
      const double cap = af * ah * rhs_base[t] * rhs_base[t];
      draw_ok[t] = lhs_stat[t] <= cap + 1e-9 * std::max(1.0, cap) ? 1 : 0;
    }
  });

  int dominated_draws = 0;
  for (char ok : draw_ok) dominated_draws += ok;

  std::vector<TailReport> reports;
  reports.reserve(thetas.size());
  for (double theta : thetas) {
    int hits_lhs = 0, hits_rhs = 0;
    for (int t = 0; t < spec.trials; ++t) {
      if (lhs_stat[t] >= theta) ++hits_lhs;
      if (mode == TailMode::Addition) {
        if ((af + ah) * rhs_base[t] >= theta) ++hits_rhs;
      } else {
        if (theta <= 0.0 || rhs_base[t] >= std::sqrt(theta / (af * ah))) ++hits_rhs;
      }
    }
    TailReport rep;
    rep.theta = theta;
    rep.trials = spec.trials;
    rep.p_lhs = static_cast<double>(hits_lhs) / spec.trials;
    rep.p_rhs = static_cast<double>(hits_rhs) / spec.trials;
    rep.ci_halfwidth = wilson_halfwidth(hits_lhs, spec.trials);
    rep.dominated = rep.p_lhs <= rep.p_rhs + rep.ci_halfwidth;
    rep.draws_dominated = dominated_draws;
    reports.push_back(rep);
  }
  return reports;
}

}  // namespace opjensen
