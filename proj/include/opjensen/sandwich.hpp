#pragma once

#include <vector>

#include "opjensen/envelope.hpp"
#include "opjensen/operator_core.hpp"
#include "opjensen/phi_map.hpp"

namespace opjensen {

enum class Side { Upper, Lower };

// Union of disjoint closed intervals, kept sorted and merged.
struct RangeSet {
  std::vector<Interval> parts;

  static RangeSet of(std::vector<Interval> intervals);
  Interval hull() const;
  bool contains(double x) const;
};

// Operator sandwich for one input A: two-sided polynomial Kantorovich bounds
//
//   lower_raw <= sum_i a_i f(A)^i <= upper_raw      (Loewner order)
//
// built per power from the envelope polynomials, with Kantorovich factors
// K(min, max, i) taken at the spectral endpoints of the corresponding
// envelope polynomial applied to A.  The *_op members are the compressions
// V^T (...) V of the raw operators.
struct SandwichPair {
  HermitianOperator upper_raw;
  HermitianOperator lower_raw;
  HermitianOperator upper_op;
  HermitianOperator lower_op;
  // Kantorovich factor applied at each power (index = power).  Powers with
  // nonnegative coefficients carry K(...) of the upper polynomial's spectrum;
  // negative coefficients carry 1/K(...) of the lower polynomial's spectrum,
  // and vice versa on the lower side.
  std::vector<double> kanto_weights_upper;
  std::vector<double> kanto_weights_lower;
};

// Preconditions: the spectrum of A lies inside the envelope interval, and
// both envelope polynomials have strictly positive spectra on A
// (NonPositiveSpectrum names the offending polynomial otherwise).
SandwichPair build_sandwich(const PhiMap& phi, const Envelope& env,
                            const HermitianOperator& A);

// Scalar version of one side of the sandwich, with Kantorovich factors taken
// at the *scalar image* of the envelope polynomials over the whole envelope
// interval rather than at the spectrum of one specific A.  The pointwise
// sandwich argument only needs factors >= 1 on nonnegative-coefficient powers
// and divisors >= 1 on negative ones, so the returned polynomial s still
// satisfies  s(A) >= sum_i a_i f(A)^i  (upper side; <= on the lower side) for
// *every* A with spectrum in the interval -- and its scalar range over the
// interval then encloses the spectrum of the compressed operator, which is
// what the ensemble bound engines need.
Polynomial sandwich_scalar_poly(const PhiMap& phi, const Envelope& env, Side side);

// Scalar range of the sandwich polynomial over the envelope interval,
// returned as a single interval.
RangeSet sandwich_range(const PhiMap& phi, const Envelope& env, Side side);

}  // namespace opjensen
