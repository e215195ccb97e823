#include "opjensen/kantorovich.hpp"

#include <cmath>
#include <string>

#include "opjensen/errors.hpp"
#include "opjensen/interval.hpp"
#include "opjensen/optimize.hpp"

namespace opjensen {

double kantorovich(double m, double M, double r) {
  if (!(m > 0.0))
    throw NonPositiveSpectrum("kantorovich: left endpoint m = " + std::to_string(m) +
                              " must be positive");
  if (!(m <= M)) throw ValidationError("kantorovich needs m <= M");
  if (is_degenerate(m, M)) return 1.0;
  if (r == 0.0 || r == 1.0) return 1.0;

  const double Mr = std::pow(M, r);
  const double mr = std::pow(m, r);
  const double cross = m * Mr - M * mr;
  const double front = cross / ((r - 1.0) * (M - m));
  const double bracket = ((r - 1.0) * (Mr - mr)) / (r * cross);
  return front * std::pow(bracket, r);
}

double kantorovich_oracle(double m, double M, double r) {
  if (!(m > 0.0))
    throw NonPositiveSpectrum("kantorovich_oracle: left endpoint m = " + std::to_string(m) +
                              " must be positive");
  if (!(m <= M)) throw ValidationError("kantorovich_oracle needs m <= M");
  if (is_degenerate(m, M)) return 1.0;
  if (r == 0.0 || r == 1.0) return 1.0;

  const double Mr = std::pow(M, r);
  const double mr = std::pow(m, r);
  const double a = (Mr - mr) / (M - m);
  const double b = (M * mr - m * Mr) / (M - m);
  const auto ratio = [&](double x) { return (a * x + b) / std::pow(x, r); };
  const bool inside_unit = (r > 0.0 && r < 1.0);
  const OptimizeMode mode = inside_unit ? OptimizeMode::Minimize : OptimizeMode::Maximize;
  return scalar_optimize(ratio, {{m, M}}, mode).value;
}

}  // namespace opjensen
