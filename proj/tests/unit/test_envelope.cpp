#include <doctest.h>

#include <cmath>

#include "opjensen/envelope.hpp"
#include "opjensen/errors.hpp"
#include "opjensen/rng.hpp"

using opjensen::build_envelope;
using opjensen::chord_tangent;
using opjensen::Envelope;
using opjensen::LinearBound;
using opjensen::ScalarFunction;

TEST_CASE("chord and parallel tangent of x^2") {
  SUBCASE("on [1, 2]") {
    const LinearBound lb = chord_tangent(ScalarFunction::power(2.0), 1.0, 2.0);
    CHECK(lb.a == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(lb.b == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(lb.x0 == doctest::Approx(1.5).epsilon(1e-9));
    CHECK(lb.b_prime == doctest::Approx(-2.25).epsilon(1e-9));
  }
  SUBCASE("on [0, 2]") {
    const LinearBound lb = chord_tangent(ScalarFunction::power(2.0), 0.0, 2.0);
    CHECK(lb.a == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(lb.b == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(lb.x0 == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(lb.b_prime == doctest::Approx(-1.0).epsilon(1e-9));
  }
}

TEST_CASE("chord sits above and tangent below a convex function") {
  opjensen::Rng rng(55);
  for (const char* text : {"pow:2", "pow:4", "exp", "neg:log", "pow:-1"}) {
    CAPTURE(text);
    const ScalarFunction f = ScalarFunction::parse(text);
    const double m = rng.uniform(0.4, 1.0);
    const double M = m + rng.uniform(0.5, 2.0);
    const LinearBound lb = chord_tangent(f, m, M);
    for (int i = 0; i <= 2000; ++i) {
      const double x = m + (M - m) * i / 2000.0;
      CHECK(lb.a * x + lb.b >= f(x) - 1e-9);
      CHECK(lb.a * x + lb.b_prime <= f(x) + 1e-9);
    }
  }
}

TEST_CASE("chord_tangent rejects bad intervals") {
  CHECK_THROWS_AS(chord_tangent(ScalarFunction::power(2.0), 1.0, 1.0),
                  opjensen::DegenerateInterval);
  CHECK_THROWS_AS(chord_tangent(ScalarFunction::logarithm(), -1.0, 1.0),
                  opjensen::DomainViolation);
}

TEST_CASE("interpolation envelope encloses the function") {
  opjensen::Rng rng(808);
  for (const char* text : {"exp", "log", "pow:0.5", "pow:3"}) {
    CAPTURE(text);
    const ScalarFunction f = ScalarFunction::parse(text);
    for (int trial = 0; trial < 5; ++trial) {
      const double m = rng.uniform(0.3, 1.5);
      const double M = m + rng.uniform(0.3, 2.0);
      const int degree = rng.uniform_int(2, 7);
      const Envelope env = build_envelope(f, m, M, degree, 1e9);
      CHECK_NOTHROW(opjensen::validate_envelope(env));
      // spot-check the two-sided property directly
      for (int i = 0; i <= 500; ++i) {
        const double x = m + (M - m) * i / 500.0;
        const double fx = f(x);
        const double slack = 1e-10 * std::max(1.0, std::abs(fx));
        CHECK(env.lower(x) <= fx + slack);
        CHECK(env.upper(x) >= fx - slack);
        CHECK(fx - env.lower(x) <= env.eps + slack);
        CHECK(env.upper(x) - fx <= env.eps + slack);
      }
    }
  }
}

TEST_CASE("degree-4 envelope of exp on [0,1] is tight") {
  const Envelope env = build_envelope(ScalarFunction::exponential(), 0.0, 1.0, 4, 1e-3);
  CHECK(env.eps <= 1e-3);
  CHECK(env.eps > 0.0);
}

TEST_CASE("polynomial inputs collapse to a zero-width envelope") {
  const ScalarFunction f = ScalarFunction::parse("poly:1,-2,0,1");
  const Envelope env = build_envelope(f, -1.0, 2.0, 3, 1e-12);
  CHECK(env.eps <= 1e-12);

  // degree above the polynomial's own degree also collapses
  const Envelope env5 = build_envelope(f, -1.0, 2.0, 5, 1e-12);
  CHECK(env5.eps <= 1e-12);
}

TEST_CASE("unachievable width reports what was achieved") {
  try {
    build_envelope(ScalarFunction::exponential(), 0.0, 3.0, 2, 1e-9);
    FAIL("expected EpsNotAchievable");
  } catch (const opjensen::EpsNotAchievable& e) {
    CHECK(e.achieved > 1e-9);
    CHECK(e.achieved < 5.0);  // still a sane number for this interval
  }
}

TEST_CASE("chord/tangent envelope") {
  const Envelope env =
      opjensen::envelope_from_chord_tangent(ScalarFunction::power(2.0), 1.0, 2.0);
  CHECK(env.upper.coeff(1) == doctest::Approx(3.0));
  CHECK(env.lower.coeff(1) == doctest::Approx(3.0));
  CHECK_NOTHROW(opjensen::validate_envelope(env));
  // width is the chord-tangent vertical gap at the tangency point
  CHECK(env.eps == doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("degenerate window gives a constant envelope") {
  const Envelope env = build_envelope(ScalarFunction::exponential(), 2.0, 2.0, 4, 1e-12);
  CHECK(env.eps == 0.0);
  CHECK(env.upper(2.0) == doctest::Approx(std::exp(2.0)));
}

TEST_CASE("validate_envelope rejects a violated claim") {
  Envelope env = build_envelope(ScalarFunction::exponential(), 0.0, 1.0, 4, 1e-3);
  env.upper = env.upper + opjensen::Polynomial::constant(-0.3);
  CHECK_THROWS_AS(opjensen::validate_envelope(env), opjensen::ValidationError);
}
