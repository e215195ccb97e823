#pragma once

#include <cstdint>
#include <vector>

#include "opjensen/operator_core.hpp"
#include "opjensen/scalar_function.hpp"

namespace opjensen {

// Ky Fan ell-norm: sum of the ell largest singular values (= absolute
// eigenvalues for symmetric input).  Requires 1 <= ell <= dim (BadEll).
double ky_fan_norm(const HermitianOperator& A, int ell);

// Random ensemble description for tail sampling.  Each trial draws k
// independent n x n symmetric matrices with i.i.d. uniform eigenvalues on
// [m, M] (no endpoint forcing) under Haar-like bases; in commuting mode the
// k matrices of a trial share one random eigenbasis.  Trial t derives its
// own seed from (seed, t), so results are independent of scheduling.
struct TailSpec {
  int n = 2;
  int k = 1;
  std::vector<double> weights;  // nonnegative, sums to 1
  double m = 0.0;
  double M = 1.0;
  int trials = 1000;
  uint64_t seed = 0;
  bool commuting = false;
};

enum class TailMode { Addition, Multiplication };

// Empirical tail comparison at threshold theta.
//   Addition:        lhs stat  |sum_j w_j f(A_j) + sum_j w_j h(A_j)|_ell
//                    rhs stat  (af + ah) * |g(sum_j w_j A_j)|_ell
//   Multiplication:  lhs stat  |sym(F * H)|_ell
//                    rhs event |g(sum_j w_j A_j)|_ell >= sqrt(theta/(af*ah))
// where af/ah are the upper chord-over-g constants of f and h on [m, M].
// p_lhs and p_rhs are the empirical exceedance probabilities,
// ci_halfwidth the 95% Wilson half-width on p_lhs, and `dominated` the
// comparison p_lhs <= p_rhs + ci_halfwidth.  draws_dominated counts trials
// whose lhs stat is within its certified per-draw cap (addition: any
// ensemble; multiplication: commuting ensembles).
struct TailReport {
  double theta = 0.0;
  double p_lhs = 0.0;
  double p_rhs = 0.0;
  double ci_halfwidth = 0.0;
  bool dominated = false;
  int trials = 0;
  int draws_dominated = 0;
};

// One report per theta; all thetas share the same sampled trials.
// Both modes require f, h >= 0 on [m, M]; multiplication additionally
// requires the commuting flag.
std::vector<TailReport> tail_sweep(const TailSpec& spec, const ScalarFunction& f,
                                   const ScalarFunction& h, const ScalarFunction& g,
                                   int ell, const std::vector<double>& thetas,
                                   TailMode mode);

}  // namespace opjensen
