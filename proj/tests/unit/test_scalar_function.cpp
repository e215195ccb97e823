#include <doctest.h>

#include <cmath>

#include "opjensen/errors.hpp"
#include "opjensen/rng.hpp"
#include "opjensen/scalar_function.hpp"

using opjensen::ScalarFunction;

TEST_CASE("text forms parse and evaluate") {
  struct Row {
    const char* text;
    double x;
    double want;
  };
  const Row rows[] = {
      {"pow:2", 3.0, 9.0},
      {"pow:0.5", 4.0, 2.0},
      {"pow:-1", 2.0, 0.5},
      {"exp", 0.0, 1.0},
      {"log", 1.0, 0.0},
      {"affine:2,-1", 3.0, 5.0},
      {"poly:1,0,2", 2.0, 9.0},
      {"id", 7.5, 7.5},
      {"neg:exp", 0.0, -1.0},
      {"scaled:3,pow:2", 2.0, 12.0},
      {"scaled:0.5,neg:id", 4.0, -2.0},
  };
  for (const Row& row : rows) {
    CAPTURE(row.text);
    const ScalarFunction f = ScalarFunction::parse(row.text);
    CHECK(f(row.x) == doctest::Approx(row.want).epsilon(1e-14));
  }
}

TEST_CASE("parse rejects garbage") {
  for (const char* bad : {"", "pow", "pow:", "pow:abc", "affine:1", "poly:",
                          "scaled:2", "neg:", "sinh", "poly:1,,2", "pow:2x"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(ScalarFunction::parse(bad), opjensen::ValidationError);
  }
}

TEST_CASE("name round-trips through parse") {
  for (const char* text : {"pow:2", "exp", "log", "affine:2,-1", "poly:1,0,2",
                           "neg:log", "scaled:3,pow:2"}) {
    const ScalarFunction f = ScalarFunction::parse(text);
    const ScalarFunction g = ScalarFunction::parse(f.name());
    for (double x : {1.1, 1.7, 2.4}) CHECK(f(x) == doctest::Approx(g(x)).epsilon(1e-14));
  }
}

TEST_CASE("structural derivatives match difference quotients") {
  opjensen::Rng rng(7);
  for (const char* text : {"pow:2", "pow:3.5", "exp", "log", "affine:2,-1",
                           "poly:0,1,-1,0.5", "neg:exp", "scaled:2,log"}) {
    CAPTURE(text);
    const ScalarFunction f = ScalarFunction::parse(text);
    const ScalarFunction fp = f.derivative();
    for (int s = 0; s < 20; ++s) {
      const double x = rng.uniform(0.5, 3.0);
      const double h = 1e-6 * std::max(1.0, std::abs(x));
      const double numeric = (f(x + h) - f(x - h)) / (2.0 * h);
      CHECK(fp(x) == doctest::Approx(numeric).epsilon(1e-6));
    }
  }
}

TEST_CASE("exact derivative identities") {
  const ScalarFunction e = ScalarFunction::exponential();
  CHECK(e.derivative()(1.234) == e(1.234));

  const ScalarFunction lg = ScalarFunction::logarithm();
  CHECK(lg.derivative()(2.0) == doctest::Approx(0.5));

  const ScalarFunction sq = ScalarFunction::power(2.0);
  CHECK(sq.derivative()(3.0) == doctest::Approx(6.0));
}

TEST_CASE("domains") {
  CHECK(ScalarFunction::power(2.0).domain_contains(-5.0));       // integer power
  CHECK(ScalarFunction::power(3.0).domain_contains(-5.0));
  CHECK_FALSE(ScalarFunction::power(0.5).domain_contains(-1.0));  // needs x >= 0
  CHECK(ScalarFunction::power(0.5).domain_contains(0.0));
  CHECK_FALSE(ScalarFunction::power(-1.0).domain_contains(0.0));  // needs x > 0
  CHECK_FALSE(ScalarFunction::logarithm().domain_contains(0.0));
  CHECK(ScalarFunction::logarithm().domain_contains(1e-300));
  CHECK(ScalarFunction::exponential().domain_contains(-1e9));
  // wrappers inherit the inner domain
  CHECK_FALSE(ScalarFunction::parse("neg:log").domain_contains(-1.0));
  CHECK_FALSE(ScalarFunction::parse("scaled:2,pow:0.5").domain_contains(-1.0));
}

TEST_CASE("polynomial view") {
  auto p = ScalarFunction::parse("poly:1,2,3").as_polynomial();
  REQUIRE(p.has_value());
  CHECK(p->coeffs() == std::vector<double>{1.0, 2.0, 3.0});

  auto aff = ScalarFunction::affine(2.0, -1.0).as_polynomial();
  REQUIRE(aff.has_value());
  CHECK(aff->coeffs() == std::vector<double>{-1.0, 2.0});

  auto cube = ScalarFunction::power(3.0).as_polynomial();
  REQUIRE(cube.has_value());
  CHECK(cube->degree() == 3);

  auto scaled = ScalarFunction::parse("scaled:2,poly:0,1").as_polynomial();
  REQUIRE(scaled.has_value());
  CHECK(scaled->coeffs() == std::vector<double>{0.0, 2.0});

  CHECK_FALSE(ScalarFunction::exponential().as_polynomial().has_value());
  CHECK_FALSE(ScalarFunction::power(0.5).as_polynomial().has_value());
}
