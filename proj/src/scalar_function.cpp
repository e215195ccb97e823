#include "opjensen/scalar_function.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "opjensen/errors.hpp"

namespace opjensen {

namespace {

bool is_integer(double q) {
  return std::isfinite(q) && std::floor(q) == q && std::abs(q) < 1e15;
}

// x^k for integer k by repeated squaring; |k| is small in practice.
double powi(double x, long long k) {
  if (k < 0) return 1.0 / powi(x, -k);
  double acc = 1.0, base = x;
  while (k > 0) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  return acc;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::vector<double> parse_csv_numbers(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ValidationError(std::string("cannot parse number '") + item + "' in " + what);
    }
  }
  if (out.empty()) throw ValidationError(std::string("empty number list in ") + what);
  return out;
}

}  // namespace

ScalarFunction ScalarFunction::power(double q) {
  if (!std::isfinite(q)) throw ValidationError("power exponent must be finite");
  return ScalarFunction(Tag::Power, q, 0.0);
}

ScalarFunction ScalarFunction::exponential() { return ScalarFunction(Tag::Exp, 0.0, 0.0); }

ScalarFunction ScalarFunction::logarithm() { return ScalarFunction(Tag::Log, 0.0, 0.0); }

ScalarFunction ScalarFunction::affine(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) throw ValidationError("affine parameters must be finite");
  return ScalarFunction(Tag::Affine, a, b);
}

ScalarFunction ScalarFunction::poly(Polynomial p) {
  ScalarFunction f(Tag::Poly, 0.0, 0.0);
  f.poly_ = std::make_shared<const Polynomial>(std::move(p));
  return f;
}

ScalarFunction ScalarFunction::negate(ScalarFunction inner) {
  ScalarFunction f(Tag::Neg, 0.0, 0.0);
  f.inner_ = std::make_shared<const ScalarFunction>(std::move(inner));
  return f;
}

ScalarFunction ScalarFunction::scaled(double c, ScalarFunction inner) {
  if (!std::isfinite(c)) throw ValidationError("scale factor must be finite");
  ScalarFunction f(Tag::Scaled, c, 0.0);
  f.inner_ = std::make_shared<const ScalarFunction>(std::move(inner));
  return f;
}

double ScalarFunction::operator()(double x) const {
  switch (tag_) {
    case Tag::Power:
      if (is_integer(a_)) return powi(x, static_cast<long long>(a_));
      return std::pow(x, a_);
    case Tag::Exp:
      return std::exp(x);
    case Tag::Log:
      return std::log(x);
    case Tag::Affine:
      return a_ * x + b_;
    case Tag::Poly:
      return (*poly_)(x);
    case Tag::Neg:
      return -(*inner_)(x);
    case Tag::Scaled:
      return a_ * (*inner_)(x);
  }
  return 0.0;  // unreachable
}

ScalarFunction ScalarFunction::derivative() const {
  switch (tag_) {
    case Tag::Power:
      if (a_ == 0.0) return affine(0.0, 0.0);
      if (a_ == 1.0) return affine(0.0, 1.0);
      return scaled(a_, power(a_ - 1.0));
    case Tag::Exp:
      return exponential();
    case Tag::Log:
      return power(-1.0);
    case Tag::Affine:
      return affine(0.0, a_);
    case Tag::Poly:
      return poly(poly_->derivative());
    case Tag::Neg:
      return negate(inner_->derivative());
    case Tag::Scaled:
      return scaled(a_, inner_->derivative());
  }
  return affine(0.0, 0.0);  // unreachable
}

bool ScalarFunction::domain_contains(double x) const {
  if (!std::isfinite(x)) return false;
  switch (tag_) {
    case Tag::Power:
      if (is_integer(a_) && a_ >= 0.0) return true;
      if (!is_integer(a_) && a_ > 0.0) return x >= 0.0;
      return x > 0.0;
    case Tag::Log:
      return x > 0.0;
    case Tag::Exp:
    case Tag::Affine:
    case Tag::Poly:
      return true;
    case Tag::Neg:
    case Tag::Scaled:
      return inner_->domain_contains(x);
  }
  return false;  // unreachable
}

std::string ScalarFunction::name() const {
  switch (tag_) {
    case Tag::Power:
      return "pow:" + fmt(a_);
    case Tag::Exp:
      return "exp";
    case Tag::Log:
      return "log";
    case Tag::Affine:
      return "affine:" + fmt(a_) + "," + fmt(b_);
    case Tag::Poly:
      return poly_->to_string();
    case Tag::Neg:
      return "neg:" + inner_->name();
    case Tag::Scaled:
      return "scaled:" + fmt(a_) + "," + inner_->name();
  }
  return "";  // unreachable
}

std::optional<Polynomial> ScalarFunction::as_polynomial() const {
  switch (tag_) {
    case Tag::Affine:
      return Polynomial::line(a_, b_);
    case Tag::Poly:
      return *poly_;
    case Tag::Power:
      if (is_integer(a_) && a_ >= 0.0 && a_ <= 64.0)
        return Polynomial::monomial(static_cast<int>(a_));
      return std::nullopt;
    case Tag::Neg: {
      auto p = inner_->as_polynomial();
      if (p) return p->scaled(-1.0);
      return std::nullopt;
    }
    case Tag::Scaled: {
      auto p = inner_->as_polynomial();
      if (p) return p->scaled(a_);
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

ScalarFunction ScalarFunction::parse(const std::string& text) {
  if (text == "exp") return exponential();
  if (text == "log") return logarithm();
  if (text == "id") return identity();
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw ValidationError("unknown scalar function '" + text + "'");
  const std::string head = text.substr(0, colon);
  const std::string rest = text.substr(colon + 1);
  if (head == "pow") {
    const auto vals = parse_csv_numbers(rest, "pow");
    if (vals.size() != 1) throw ValidationError("pow takes exactly one exponent");
    return power(vals[0]);
  }
  if (head == "affine") {
    const auto vals = parse_csv_numbers(rest, "affine");
    if (vals.size() != 2) throw ValidationError("affine takes exactly a,b");
    return affine(vals[0], vals[1]);
  }
  if (head == "poly") {
    return poly(Polynomial(parse_csv_numbers(rest, "poly")));
  }
  if (head == "neg") {
    return negate(parse(rest));
  }
  if (head == "scaled") {
    const auto comma = rest.find(',');
    if (comma == std::string::npos) throw ValidationError("scaled takes c,<form>");
    const auto vals = parse_csv_numbers(rest.substr(0, comma), "scaled");
    if (vals.size() != 1) throw ValidationError("scaled takes c,<form>");
    return scaled(vals[0], parse(rest.substr(comma + 1)));
  }
  throw ValidationError("unknown scalar function '" + text + "'");
}

}  // namespace opjensen
