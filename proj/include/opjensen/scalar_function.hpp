#pragma once

#include <memory>
#include <optional>
#include <string>

#include "opjensen/interval.hpp"
#include "opjensen/polynomial.hpp"

namespace opjensen {

// A named, evaluatable real function together with its natural domain.
// The constructor set below is closed under differentiation, so derivative()
// is exact and structural -- no numeric differencing anywhere.
//
// Textual forms understood by parse() / produced by name():
//   pow:q           x -> x^q
//   exp             x -> e^x
//   log             natural log
//   affine:a,b      x -> a*x + b
//   poly:c0,c1,...  coefficients in ascending powers
//   id              alias for affine:1,0
//   neg:<form>      x -> -inner(x)
//   scaled:c,<form> x -> c*inner(x)
class ScalarFunction {
 public:
  enum class Tag { Power, Exp, Log, Affine, Poly, Neg, Scaled };

  static ScalarFunction power(double q);
  static ScalarFunction exponential();
  static ScalarFunction logarithm();
  static ScalarFunction affine(double a, double b);
  static ScalarFunction poly(Polynomial p);
  static ScalarFunction identity() { return affine(1.0, 0.0); }
  static ScalarFunction negate(ScalarFunction inner);
  static ScalarFunction scaled(double c, ScalarFunction inner);

  static ScalarFunction parse(const std::string& text);

  Tag tag() const { return tag_; }
  double operator()(double x) const;
  ScalarFunction derivative() const;

  // Natural domain membership.  Domains are intervals: all of R for exp,
  // affine, poly and integer powers q >= 0; [0, inf) for non-integer q > 0;
  // (0, inf) for log and every other power.
  bool domain_contains(double x) const;
  bool domain_contains(const Interval& iv) const {
    return domain_contains(iv.lo) && domain_contains(iv.hi);
  }

  std::string name() const;

  // Exact polynomial view when one exists (poly, affine, and neg/scaled
  // wrappers around those).
  std::optional<Polynomial> as_polynomial() const;

  // Parameter accessors; meaningful only for the corresponding tag.
  double exponent() const { return a_; }          // Power
  double slope() const { return a_; }             // Affine
  double intercept() const { return b_; }         // Affine
  double scale() const { return a_; }             // Scaled
  const Polynomial& polynomial() const { return *poly_; }
  const ScalarFunction& inner() const { return *inner_; }

 private:
  ScalarFunction(Tag tag, double a, double b) : tag_(tag), a_(a), b_(b) {}

  Tag tag_;
  double a_ = 0.0;
  double b_ = 0.0;
  std::shared_ptr<const Polynomial> poly_;
  std::shared_ptr<const ScalarFunction> inner_;
};

}  // namespace opjensen
