#include "opjensen/polynomial.hpp"

#include <cmath>
#include <cstdio>

#include "opjensen/errors.hpp"

namespace opjensen {

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
  for (double c : coeffs_) {
    if (!std::isfinite(c)) throw ValidationError("polynomial coefficient is not finite");
  }
  while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
}

Polynomial Polynomial::monomial(int k, double coeff) {
  if (k < 0) throw ValidationError("monomial degree must be nonnegative");
  std::vector<double> c(static_cast<size_t>(k) + 1, 0.0);
  c.back() = coeff;
  return Polynomial(std::move(c));
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() == 1) return Polynomial();
  std::vector<double> d(coeffs_.size() - 1);
  for (size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = static_cast<double>(i) * coeffs_[i];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  std::vector<double> c(std::max(coeffs_.size(), other.coeffs_.size()), 0.0);
  for (size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
  for (size_t i = 0; i < other.coeffs_.size(); ++i) c[i] += other.coeffs_[i];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  return *this + other.scaled(-1.0);
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  std::vector<double> c(coeffs_.size() + other.coeffs_.size() - 1, 0.0);
  for (size_t i = 0; i < coeffs_.size(); ++i)
    for (size_t j = 0; j < other.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * other.coeffs_[j];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::scaled(double c) const {
  std::vector<double> out(coeffs_);
  for (double& v : out) v *= c;
  return Polynomial(std::move(out));
}

Polynomial Polynomial::shifted(double c) const {
  std::vector<double> out(coeffs_);
  out[0] += c;
  return Polynomial(std::move(out));
}

Polynomial Polynomial::pow(int k) const {
  if (k < 0) throw ValidationError("polynomial power must be nonnegative");
  Polynomial acc = Polynomial::constant(1.0);
  for (int i = 0; i < k; ++i) acc = acc * *this;
  return acc;
}

std::string Polynomial::to_string() const {
  std::string out = "poly:";
  char buf[64];
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.12g", coeffs_[i]);
    if (i) out += ',';
    out += buf;
  }
  return out;
}

Polynomial affine_compose_coefficients(const Polynomial& p, double alpha0, double alpha1,
                                       const std::vector<double>& weights) {
  const int deg = p.degree();
  if (deg > 30) throw ValidationError("affine_compose_coefficients: degree exceeds 30");
  const auto w = [&weights](int i) {
    return i < static_cast<int>(weights.size()) ? weights[i] : 1.0;
  };
  // Pascal triangle up to the needed order.
  std::vector<std::vector<double>> choose(deg + 1);
  for (int n = 0; n <= deg; ++n) {
    choose[n].assign(n + 1, 1.0);
    for (int k = 1; k < n; ++k) choose[n][k] = choose[n - 1][k - 1] + choose[n - 1][k];
  }
  std::vector<double> out(static_cast<size_t>(deg) + 1, 0.0);
  for (int t = 0; t <= deg; ++t) {
    double a1t = 1.0;
    for (int s = 0; s < t; ++s) a1t *= alpha1;
    double acc = 0.0;
    double a0j = 1.0;
    for (int j = 0; t + j <= deg; ++j) {
      acc += choose[t + j][t] * p.coeff(t + j) * w(t + j) * a0j;
      a0j *= alpha0;
    }
    out[static_cast<size_t>(t)] = acc * a1t;
  }
  return Polynomial(std::move(out));
}

}  // namespace opjensen
