#include "opjensen/optimize.hpp"

#include <cmath>

#include "opjensen/errors.hpp"

namespace opjensen {

namespace {

constexpr int kGridCells = 4096;  // 4097 sample points per interval

// Strictly-better comparison implementing the deterministic tie rule:
// equal values resolve toward the smaller abscissa.
bool better(const Optimum& a, const Optimum& b, OptimizeMode mode) {
  if (mode == OptimizeMode::Maximize) {
    if (a.value != b.value) return a.value > b.value;
  } else {
    if (a.value != b.value) return a.value < b.value;
  }
  return a.x < b.x;
}

Optimum optimize_single(const std::function<double(double)>& h,
                        const Interval& iv, OptimizeMode mode) {
  if (is_degenerate(iv)) {
    return {iv.lo, h(iv.lo)};
  }
  const double step = iv.width() / kGridCells;
  Optimum best{iv.lo, h(iv.lo)};
  int best_idx = 0;
  for (int i = 1; i <= kGridCells; ++i) {
    const double x = (i == kGridCells) ? iv.hi : iv.lo + step * i;
    const Optimum cand{x, h(x)};
    if (better(cand, best, mode)) {
      best = cand;
      best_idx = i;
    }
  }
  // Refine inside the bracket formed by the neighbors of the best grid point.
  const double blo = iv.lo + step * std::max(0, best_idx - 1);
  const double bhi = std::min(iv.hi, iv.lo + step * (best_idx + 1));
  const bool maximize = (mode == OptimizeMode::Maximize);
  const auto signed_h = [&](double x) { return maximize ? -h(x) : h(x); };
  const double xr = golden_section_min(signed_h, blo, bhi);
  const Optimum refined{xr, h(xr)};
  if (better(refined, best, mode)) best = refined;
  return best;
}

}  // namespace

double golden_section_min(const std::function<double(double)>& f, double lo,
                          double hi, double xtol) {
  if (!(lo <= hi)) throw ValidationError("golden section needs lo <= hi");
  static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > xtol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

Optimum scalar_optimize(const std::function<double(double)>& h,
                        const std::vector<Interval>& intervals,
                        OptimizeMode mode) {
  if (intervals.empty()) throw ValidationError("scalar_optimize needs at least one interval");
  bool have = false;
  Optimum best{};
  for (const Interval& iv : intervals) {
    if (!iv.valid()) throw ValidationError("scalar_optimize interval has lo > hi");
    const Optimum cand = optimize_single(h, iv, mode);
    if (!have || better(cand, best, mode)) {
      best = cand;
      have = true;
    }
  }
  return best;
}

Interval function_range(const ScalarFunction& f, double m, double M) {
  if (!(m <= M)) throw ValidationError("function_range needs m <= M");
  if (!f.domain_contains(m) || !f.domain_contains(M))
    throw DomainViolation("function_range: [" + std::to_string(m) + ", " + std::to_string(M) +
                          "] escapes the domain of " + f.name());
  if (is_degenerate(m, M)) {
    const double v = f(m);
    return {v, v};
  }
  const std::vector<Interval> ivs{{m, M}};
  const double lo = scalar_optimize(f, ivs, OptimizeMode::Minimize).value;
  const double hi = scalar_optimize(f, ivs, OptimizeMode::Maximize).value;
  return {lo, hi};
}

Interval function_range(const std::function<double(double)>& f, double m, double M) {
  if (!(m <= M)) throw ValidationError("function_range needs m <= M");
  if (is_degenerate(m, M)) {
    const double v = f(m);
    return {v, v};
  }
  const std::vector<Interval> ivs{{m, M}};
  const double lo = scalar_optimize(f, ivs, OptimizeMode::Minimize).value;
  const double hi = scalar_optimize(f, ivs, OptimizeMode::Maximize).value;
  return {lo, hi};
}

}  // namespace opjensen
