#pragma once

#include <string>
#include <vector>

namespace opjensen {

// Dense univariate real polynomial, coefficients stored in ascending powers.
// Trailing zero coefficients are stripped on construction, so the leading
// coefficient is nonzero unless the polynomial is identically zero (which is
// kept as the single coefficient {0}).
class Polynomial {
 public:
  Polynomial() : coeffs_{0.0} {}
  explicit Polynomial(std::vector<double> coeffs);

  static Polynomial constant(double c) { return Polynomial({c}); }
  // slope * x + intercept
  static Polynomial line(double slope, double intercept) {
    return Polynomial({intercept, slope});
  }
  // x^k
  static Polynomial monomial(int k, double coeff = 1.0);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  double coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(coeffs_.size())) ? coeffs_[i] : 0.0;
  }
  bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }

  // Horner evaluation.
  double operator()(double x) const;

  Polynomial derivative() const;

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial scaled(double c) const;
  Polynomial shifted(double c) const;  // this + c
  Polynomial pow(int k) const;         // k >= 0

  std::string to_string() const;  // "poly:c0,c1,..." textual form

 private:
  std::vector<double> coeffs_;
};

// Expands  sum_i p_i * w_i * (alpha0 + alpha1 * x)^i  to monomial
// coefficients: c_t = sum_j C(t+j, t) * p_{t+j} * w_{t+j} * alpha1^t * alpha0^j.
// `weights` must align with the coefficients of p (shorter lists are padded
// with 1).  Degrees above 30 are rejected (ValidationError): the binomial
// growth makes larger expansions numerically meaningless.
Polynomial affine_compose_coefficients(const Polynomial& p, double alpha0,
                                       double alpha1,
                                       const std::vector<double>& weights);

}  // namespace opjensen
