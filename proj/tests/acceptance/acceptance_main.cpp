// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure.  Each criterion is self-contained so a failure pinpoints the
// surface it guards.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "../support/instance_gen.hpp"
#include "opjensen/bounds_algebra.hpp"
#include "opjensen/converse.hpp"
#include "opjensen/envelope.hpp"
#include "opjensen/errors.hpp"
#include "opjensen/kantorovich.hpp"
#include "opjensen/rng.hpp"
#include "opjensen/sandwich.hpp"
#include "opjensen/tail_mc.hpp"

using namespace opjensen;

namespace {

int g_failures = 0;

void report(int idx, const char* label, bool ok, const std::string& note = "") {
  std::printf("%s: %2d %s%s\n", ok ? "PASS" : "FAIL", idx, label,
              note.empty() ? "" : ("  [" + note + "]").c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

// ---- 1: Kantorovich closed forms + chord-ratio oracle ----------------------

void criterion_kantorovich() {
  std::string note;
  bool ok = std::abs(kantorovich(1, 2, 2) - 1.125) <= 1e-10 &&
            std::abs(kantorovich(1, 2, -1) - 1.125) <= 1e-10 &&
            std::abs(kantorovich(1, 4, 2) - 1.5625) <= 1e-10;
  if (!ok) note = "closed-form value off";

  Rng rng(20260819);
  int accepted = 0;
  while (ok && accepted < 200) {
    const double m = rng.uniform(0.1, 2.0);
    const double M = m + rng.uniform(0.1, 3.0);
    const double r = rng.uniform(-3.0, 3.0);
    if (std::abs(r) < 0.02 || std::abs(r - 1.0) < 0.02) continue;  // flat limits
    ++accepted;
    const double closed = kantorovich(m, M, r);
    const double oracle = kantorovich_oracle(m, M, r);
    if (std::abs(closed - oracle) > 1e-6 * closed) {
      ok = false;
      char buf[160];
      std::snprintf(buf, sizeof buf, "oracle mismatch at m=%g M=%g r=%g: %.12g vs %.12g",
                    m, M, r, closed, oracle);
      note = buf;
    }
  }
  report(1, "kantorovich closed forms match the chord-ratio oracle", ok, note);
}

// ---- 2: two-sided operator sandwich on random instances --------------------

void criterion_sandwich() {
  bool ok = true;
  std::string note;
  for (uint64_t seed = 0; seed < 200 && ok; ++seed) {
    const testgen::RandomInstance inst = testgen::random_instance(seed, {});
    for (size_t j = 0; j < inst.ens.size() && ok; ++j) {
      const HermitianOperator& A = inst.ens.member(j).A;
      const SandwichPair sw = build_sandwich(inst.phi, inst.envs[j], A);
      const HermitianOperator mid =
          apply_polynomial(Polynomial{inst.phi.coeffs()}, apply_scalar(inst.f, A));
      const OrderCertificate up =
          loewner_leq(mid, sw.upper_raw, certification_tol(mid, sw.upper_raw));
      const OrderCertificate lo =
          loewner_leq(sw.lower_raw, mid, certification_tol(sw.lower_raw, mid));
      if (!up.holds || !lo.holds) {
        ok = false;
        note = "seed " + std::to_string(seed) + " member " + std::to_string(j) +
               " gaps " + std::to_string(up.gap_min_eig) + "/" +
               std::to_string(lo.gap_min_eig);
      }
    }
  }
  report(2, "sandwich Loewner inequalities hold on 200 random instances", ok, note);
}

// ---- 3: general converse bounds across F families and targets g ------------

void criterion_general_bounds() {
  bool ok = true;
  std::string note;
  const char* g_names[4] = {"id", "pow:2", "exp", "log"};
  testgen::GenOptions opt;
  opt.mixed_signs = false;
  opt.positive_offset = true;   // sandwich ranges stay above 1 for log/power
  opt.max_upper_range = 20.0;   // and inside exp's comfort zone

  for (uint64_t seed = 0; seed < 200 && ok; ++seed) {
    const testgen::RandomInstance inst = testgen::random_instance(seed + 5000, opt);
    const ScalarFunction g = ScalarFunction::parse(g_names[seed % 4]);
    const double alpha = 0.25 + 0.1 * static_cast<double>(seed % 5);
    const FFamily F = (seed % 2 == 0) ? FFamily::congruence() : FFamily::difference(alpha);

    for (Side side : {Side::Upper, Side::Lower}) {
      const BoundCertificate cert =
          general_bound(inst.ens, inst.phi, inst.envs, g, F, side);
      if (!cert.certificate.holds || !std::isfinite(cert.scalar_constant)) {
        ok = false;
        note = "general bound failed at seed " + std::to_string(seed);
        break;
      }
      // The additive-defect entry point must be the same computation.
      const BoundCertificate via_alpha =
          alpha_bound(inst.ens, inst.phi, inst.envs, g, alpha, side);
      const BoundCertificate via_general = general_bound(
          inst.ens, inst.phi, inst.envs, g, FFamily::difference(alpha), side);
      const bool identical =
          via_alpha.scalar_constant == via_general.scalar_constant &&
          via_alpha.x_star == via_general.x_star &&
          via_alpha.certificate.gap_min_eig == via_general.certificate.gap_min_eig &&
          (via_alpha.subject.matrix() - via_general.subject.matrix())
                  .cwiseAbs()
                  .maxCoeff() == 0.0 &&
          (via_alpha.bound.matrix() - via_general.bound.matrix())
                  .cwiseAbs()
                  .maxCoeff() == 0.0;
      if (!identical) {
        ok = false;
        note = "alpha_bound deviates from general_bound at seed " + std::to_string(seed);
        break;
      }
    }
  }
  report(3, "general converse certificates hold for both families and all targets", ok,
         note);
}

// ---- 4 and 5: frozen ratio/difference constants + operator brackets --------

void criterion_ratio_constants() {
  const LinearBound lb = chord_tangent(ScalarFunction::power(2.0), 1.0, 2.0);
  const Polynomial chord{{lb.b, lb.a}};
  const Polynomial tangent{{lb.b_prime, lb.a}};
  const ScalarFunction id = ScalarFunction::identity();
  const Interval iv{1.0, 2.0};

  const ScalarConstant a1 = ratio_constant(chord, id, iv, Side::Upper, GSign::Positive);
  const ScalarConstant a2 = ratio_constant(tangent, id, iv, Side::Lower, GSign::Positive);
  bool ok = std::abs(a1.value - 2.0) <= 1e-8 && std::abs(a2.value - 0.75) <= 1e-8;
  std::string note;
  if (!ok)
    note = "constants " + std::to_string(a1.value) + ", " + std::to_string(a2.value);

  for (uint64_t seed = 0; seed < 50 && ok; ++seed) {
    const int n = 2 + static_cast<int>(seed % 5);
    const HermitianOperator A = random_hermitian(n, 1.0, 2.0, 404 + seed);
    const HermitianOperator fA = apply_scalar(ScalarFunction::power(2.0), A);
    const HermitianOperator hi = A.scaled(a1.value);
    const HermitianOperator lo = A.scaled(a2.value);
    if (!loewner_leq(fA, hi, certification_tol(fA, hi)).holds ||
        !loewner_leq(lo, fA, certification_tol(lo, fA)).holds) {
      ok = false;
      note = "operator bracket failed at seed " + std::to_string(seed);
    }
  }
  report(4, "ratio constants 2.0 and 0.75 certify f(A) against A", ok, note);
}

void criterion_difference_constants() {
  const LinearBound lb = chord_tangent(ScalarFunction::power(2.0), 1.0, 2.0);
  const ScalarFunction id = ScalarFunction::identity();
  const Interval iv{1.0, 2.0};

  const ScalarConstant b1 =
      difference_constant(Polynomial{{lb.b, lb.a}}, id, iv, Side::Upper);
  const ScalarConstant b2 =
      difference_constant(Polynomial{{lb.b_prime, lb.a}}, id, iv, Side::Lower);
  bool ok = std::abs(b1.value - 2.0) <= 1e-8 && std::abs(b2.value + 0.25) <= 1e-8;
  std::string note;
  if (!ok)
    note = "constants " + std::to_string(b1.value) + ", " + std::to_string(b2.value);

  for (uint64_t seed = 0; seed < 50 && ok; ++seed) {
    const int n = 2 + static_cast<int>(seed % 5);
    const HermitianOperator A = random_hermitian(n, 1.0, 2.0, 808 + seed);
    const HermitianOperator fA = apply_scalar(ScalarFunction::power(2.0), A);
    const HermitianOperator hi = A + HermitianOperator::scaled_identity(n, b1.value);
    const HermitianOperator lo = A + HermitianOperator::scaled_identity(n, b2.value);
    if (!loewner_leq(fA, hi, certification_tol(fA, hi)).holds ||
        !loewner_leq(lo, fA, certification_tol(lo, fA)).holds) {
      ok = false;
      note = "operator bracket failed at seed " + std::to_string(seed);
    }
  }
  report(5, "difference constants 2.0 and -0.25 bracket f(A) around A", ok, note);
}

// ---- 6: envelope quality ----------------------------------------------------

void criterion_envelopes() {
  bool ok = true;
  std::string note;
  const Envelope e = build_envelope(ScalarFunction::exponential(), 0.0, 1.0, 4, 1e9);
  if (!(e.eps <= 1e-3) || !(e.eps > 0.0)) {
    ok = false;
    note = "exp degree-4 eps = " + std::to_string(e.eps);
  }
  const ScalarFunction p = ScalarFunction::parse("poly:1,-0.5,2");
  for (int degree : {2, 5}) {
    const Envelope pe = build_envelope(p, 0.5, 2.0, degree, 1e9);
    if (!(pe.eps <= 1e-12)) {
      ok = false;
      note = "polynomial input eps = " + std::to_string(pe.eps);
    }
  }
  report(6, "envelope widths: 1e-3 for exp degree 4, collapse for polynomials", ok,
         note);
}

// ---- 7: interval monoid laws ------------------------------------------------

void criterion_monoid() {
  bool ok = true;
  std::string note;
  Rng rng(777);
  const Interval add_id{0.0, 0.0};
  const Interval mul_id{1.0, 1.0};
  const auto same = [](const Interval& x, const Interval& y) {
    return x.lo == y.lo && x.hi == y.hi;
  };

  for (int t = 0; t < 1000 && ok; ++t) {
    Interval a{rng.uniform(-5.0, 5.0), 0.0};
    a.hi = a.lo + rng.uniform(0.0, 4.0);
    Interval b{rng.uniform(-5.0, 5.0), 0.0};
    b.hi = b.lo + rng.uniform(0.0, 4.0);
    Interval c{rng.uniform(-5.0, 5.0), 0.0};
    c.hi = c.lo + rng.uniform(0.0, 4.0);

    if (!same(interval_add(a, b), interval_add(b, a))) { ok = false; note = "add comm"; }
    const Interval al = interval_add(interval_add(a, b), c);
    const Interval ar = interval_add(a, interval_add(b, c));
    if (std::abs(al.lo - ar.lo) > 1e-12 || std::abs(al.hi - ar.hi) > 1e-12) {
      ok = false;
      note = "add assoc";
    }
    if (!same(interval_add(a, add_id), a)) { ok = false; note = "add identity"; }

    const Interval pa{a.lo + 5.5, a.hi + 5.5};  // strictly positive copies
    const Interval pb{b.lo + 5.5, b.hi + 5.5};
    const Interval pc{c.lo + 5.5, c.hi + 5.5};
    if (!same(interval_mul(pa, pb), interval_mul(pb, pa))) {
      ok = false;
      note = "mul comm";
    }
    const Interval ml = interval_mul(interval_mul(pa, pb), pc);
    const Interval mr = interval_mul(pa, interval_mul(pb, pc));
    if (std::abs(ml.lo - mr.lo) > 1e-12 * std::abs(mr.lo) ||
        std::abs(ml.hi - mr.hi) > 1e-12 * std::abs(mr.hi)) {
      ok = false;
      note = "mul assoc";
    }
    if (!same(interval_mul(pa, mul_id), pa)) { ok = false; note = "mul identity"; }
  }
  report(7, "interval monoid laws over 1000 random triples", ok, note);
}

// ---- 8: Monte Carlo tail dominance ------------------------------------------

void criterion_tail() {
  TailSpec spec;
  spec.n = 4;
  spec.k = 2;
  spec.weights = {0.5, 0.5};
  spec.m = 1.0;
  spec.M = 2.0;
  spec.trials = 10000;
  spec.seed = 4242;
  spec.commuting = true;

  std::vector<double> thetas;
  for (int i = 0; i < 20; ++i) thetas.push_back(2.0 + 12.0 * i / 19.0);

  const ScalarFunction sq = ScalarFunction::power(2.0);
  const ScalarFunction id = ScalarFunction::identity();
  const auto reports = tail_sweep(spec, sq, sq, id, 1, thetas, TailMode::Addition);

  bool ok = reports.size() == 20;
  std::string note;
  for (const TailReport& rep : reports) {
    if (rep.draws_dominated != rep.trials || !(rep.p_lhs <= rep.p_rhs)) {
      ok = false;
      char buf[120];
      std::snprintf(buf, sizeof buf, "theta %.3f: %d/%d dominated, p %.4f vs %.4f",
                    rep.theta, rep.draws_dominated, rep.trials, rep.p_lhs, rep.p_rhs);
      note = buf;
      break;
    }
  }
  report(8, "per-draw tail domination across a 20-point theta grid", ok, note);
}

// ---- 9: spectral core invariants ---------------------------------------------

void criterion_operator_core() {
  bool ok = true;
  std::string note;
  for (uint64_t seed = 0; seed < 100 && ok; ++seed) {
    Rng rng(mix_seed(9090, seed));
    const int n = rng.uniform_int(2, 8);
    const double m = rng.uniform(-2.0, 1.0);
    const double M = m + rng.uniform(0.5, 3.0);
    const HermitianOperator A = random_hermitian(n, m, M, mix_seed(seed, 3));
    const SpectralDecomposition sd = spectral_decompose(A);

    const Eigen::MatrixXd recon =
        sd.eigenvectors * sd.eigenvalues.asDiagonal() * sd.eigenvectors.transpose();
    const Eigen::MatrixXd gram = sd.eigenvectors.transpose() * sd.eigenvectors;
    if ((recon - A.matrix()).cwiseAbs().maxCoeff() > 1e-10 ||
        (gram - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-10) {
      ok = false;
      note = "reconstruction/Gram at seed " + std::to_string(seed);
      break;
    }

    std::vector<double> coeffs(4);
    for (double& c : coeffs) c = rng.uniform(-1.0, 1.0);
    const Polynomial poly{coeffs};

    // Functional calculus: Horner route against the spectral route.
    Eigen::MatrixXd horner = Eigen::MatrixXd::Zero(n, n);
    for (size_t i = poly.coeffs().size(); i-- > 0;)
      horner = horner * A.matrix() + poly.coeffs()[i] * Eigen::MatrixXd::Identity(n, n);
    const HermitianOperator pA = apply_polynomial(poly, A);
    const double scale = std::max(1.0, pA.max_abs());
    if ((horner - pA.matrix()).cwiseAbs().maxCoeff() > 1e-9 * scale) {
      ok = false;
      note = "functional calculus at seed " + std::to_string(seed);
      break;
    }

    // Spectral mapping: eigenvalues of p(A) are the sorted p(eigenvalues).
    std::vector<double> mapped(n);
    for (int i = 0; i < n; ++i) mapped[i] = poly(sd.eigenvalues[i]);
    std::sort(mapped.begin(), mapped.end());
    const SpectralDecomposition psd = spectral_decompose(pA);
    for (int i = 0; i < n; ++i) {
      const double rel = std::max(1.0, std::abs(mapped[i]));
      if (std::abs(psd.eigenvalues[i] - mapped[i]) > 1e-8 * rel) {
        ok = false;
        note = "spectral mapping at seed " + std::to_string(seed);
      }
    }
  }
  report(9, "spectral mapping and functional calculus on 100 random instances", ok,
         note);
}

// ---- 10: negative control ----------------------------------------------------

void criterion_negative_control() {
  bool ok = true;
  std::string note;

  const Envelope good = build_envelope(ScalarFunction::exponential(), 0.0, 1.0, 4, 1e9);
  Envelope bad = good;
  bad.upper = good.upper.shifted(-0.3);  // cuts below exp: inadmissible

  // Rejected by validation.
  bool rejected = false;
  try {
    validate_envelope(bad);
  } catch (const ToolkitError&) {
    rejected = true;
  }
  if (!rejected) {
    ok = false;
    note = "validator accepted a broken envelope";
  }

  // Pushed through unvalidated, the certifier must fail it decisively -- and
  // must still pass the honest envelope (non-vacuity).
  const HermitianOperator A = random_hermitian(4, 0.05, 0.95, 31337);
  const PhiMap phi = PhiMap::identity_map(4);
  const HermitianOperator mid =
      apply_polynomial(Polynomial{phi.coeffs()}, apply_scalar(good.f, A));

  const SandwichPair sw_bad = build_sandwich(phi, bad, A);
  const OrderCertificate up_bad =
      loewner_leq(mid, sw_bad.upper_raw, certification_tol(mid, sw_bad.upper_raw));
  if (up_bad.holds || up_bad.gap_min_eig > -1e-3) {
    ok = false;
    note = "broken envelope was certified, gap " + std::to_string(up_bad.gap_min_eig);
  }

  const SandwichPair sw_good = build_sandwich(phi, good, A);
  const OrderCertificate up_good =
      loewner_leq(mid, sw_good.upper_raw, certification_tol(mid, sw_good.upper_raw));
  if (!up_good.holds) {
    ok = false;
    note = "honest envelope failed: check is vacuous";
  }
  report(10, "negative control: broken envelope rejected and failed, honest one passes",
         ok, note);
}

}  // namespace

int main() {
  criterion_kantorovich();
  criterion_sandwich();
  criterion_general_bounds();
  criterion_ratio_constants();
  criterion_difference_constants();
  criterion_envelopes();
  criterion_monoid();
  criterion_tail();
  criterion_operator_core();
  criterion_negative_control();

  std::printf("acceptance: %d/10 criteria passed\n", 10 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
