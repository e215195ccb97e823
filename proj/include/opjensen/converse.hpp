#pragma once

#include <string>
#include <utility>
#include <vector>

#include "opjensen/envelope.hpp"
#include "opjensen/operator_core.hpp"
#include "opjensen/phi_map.hpp"
#include "opjensen/sandwich.hpp"

namespace opjensen {

// One operator of a weighted ensemble together with the spectral window it
// was declared on.  The window is what envelopes and scalar constants are
// built over; construction checks the spectrum actually sits inside it.
struct EnsembleMember {
  HermitianOperator A;
  Interval window;
};

class WeightedEnsemble {
 public:
  WeightedEnsemble(std::vector<EnsembleMember> members, std::vector<double> weights);

  size_t size() const { return members_.size(); }
  const EnsembleMember& member(size_t j) const { return members_[j]; }
  double weight(size_t j) const { return weights_[j]; }
  int dim() const { return members_.front().A.dim(); }

  // Hull of the member windows.
  Interval window_hull() const;

 private:
  std::vector<EnsembleMember> members_;
  std::vector<double> weights_;
};

// The two operator-monotone comparison shapes the general engine certifies:
//   difference(alpha): F(u, v) = u - alpha * v
//   congruence:        F(u, v) = v^{-1/2} u v^{-1/2}   (needs v > 0)
struct FFamily {
  enum class Kind { Difference, CongruenceRatio };
  Kind kind = Kind::Difference;
  double alpha = 1.0;

  static FFamily difference(double alpha) { return {Kind::Difference, alpha}; }
  static FFamily congruence() { return {Kind::CongruenceRatio, 1.0}; }
};

enum class BoundKind {
  GeneralUpper,
  GeneralLower,
  AlphaUpper,
  AlphaLower,
  RatioUpper,
  RatioLower,
  DifferenceUpper,
  DifferenceLower,
};

// theorem: constants optimized over sandwich-operator ranges; example:
// constants from chord/tangent lines over the window hull, certified against
// g of the compressed weighted mean.
enum class BoundForm { Theorem, Example };

enum class GSign { Positive, Negative };

std::string to_string(BoundKind kind);
std::string to_string(BoundForm form);

// A certified one-sided operator inequality.  For *Upper kinds the claim is
// subject <= bound in the Loewner order, for *Lower kinds subject >= bound;
// `certificate` is the eigenvalue witness for that claim.  scalar_constant
// and x_star record the optimized constant and its abscissa.
struct BoundCertificate {
  BoundKind kind;
  BoundForm form;
  std::string detail;
  double scalar_constant;
  double x_star;
  HermitianOperator subject;
  HermitianOperator bound;
  OrderCertificate certificate;
};

// sum_j w_j Phi(f(A_j)).
HermitianOperator ensemble_lhs(const WeightedEnsemble& ens, const PhiMap& phi,
                               const ScalarFunction& f);

// One envelope per member, each built on that member's window.
std::vector<Envelope> make_envelopes(const WeightedEnsemble& ens, const ScalarFunction& f,
                                     int degree, double target_eps);

// Weighted sum of compressed sandwich operators, together with a certified
// enclosure of its spectrum (the weighted Minkowski sum of the members'
// scalar sandwich ranges).
struct EnsembleSandwich {
  HermitianOperator op;
  Interval range;
};

EnsembleSandwich ensemble_sandwich(const WeightedEnsemble& ens, const PhiMap& phi,
                                   const std::vector<Envelope>& envs, Side side);

// General converse bound: certifies
//   F( sum_j w_j Phi(f(A_j)), g(T_side) )  <=  c * I   (side = Upper)
// (>= for side = Lower), where T_side is the ensemble sandwich operator and
// c is the extremum of F(x, g(x)) over the certified range.
BoundCertificate general_bound(const WeightedEnsemble& ens, const PhiMap& phi,
                               const std::vector<Envelope>& envs, const ScalarFunction& g,
                               const FFamily& F, Side side);

// Difference-family special case with its own kind label; delegates to
// general_bound with FFamily::difference(alpha), so the numeric content is
// identical by construction.
BoundCertificate alpha_bound(const WeightedEnsemble& ens, const PhiMap& phi,
                             const std::vector<Envelope>& envs, const ScalarFunction& g,
                             double alpha, Side side);

// alpha_bound guarded by the sign gates of the stock targets: g a real power
// needs the combined (upper+lower) sandwich range >= 0, g = log needs it > 0,
// g = exp has no gate.  Other g tags are rejected.  The fired gate is
// recorded in the certificate's detail field.
BoundCertificate gated_alpha_bound(const WeightedEnsemble& ens, const PhiMap& phi,
                                   const std::vector<Envelope>& envs, const ScalarFunction& g,
                                   double alpha, Side side);

// Extremum of numerator(x) / g(x) over the interval.  `side` picks the
// upper/lower constant; a declared-positive g maps Upper to max and Lower to
// min, and a declared-negative g swaps the two.  SignViolation if the image
// of g on the interval does not match the declared sign.
struct ScalarConstant {
  double value = 0.0;
  double x_star = 0.0;
};

ScalarConstant ratio_constant(const Polynomial& numerator, const ScalarFunction& g,
                              const Interval& iv, Side side, GSign sign);

// Extremum of numerator(x) - g(x) over the interval (max for Upper, min for
// Lower).
ScalarConstant difference_constant(const Polynomial& numerator, const ScalarFunction& g,
                                   const Interval& iv, Side side);

// Two-sided ratio certification, theorem form:
//   LHS <= alpha1 * g(T_U)   and   LHS >= alpha2 * g(T_L),
// with alpha1/alpha2 optimized over the respective sandwich ranges (the
// extremum orientation swaps for declared-negative g, the operator pairing
// does not).  g of each sandwich operator must be definite of the declared
// sign (min |eigenvalue| > 1e-10).
std::pair<BoundCertificate, BoundCertificate> ratio_certify_theorem(
    const WeightedEnsemble& ens, const PhiMap& phi, const std::vector<Envelope>& envs,
    const ScalarFunction& g, GSign sign);

// Two-sided ratio certification, example form: constants from the chord and
// parallel tangent of convex f on the window hull,
//   sum_j w_j V^T f(A_j) V <= alpha1 * g(S)   (and >= alpha2 * g(S)),
// where S = sum_j w_j V^T A_j V.  Requires a plain compression map.
std::pair<BoundCertificate, BoundCertificate> ratio_certify_example(
    const WeightedEnsemble& ens, const PhiMap& phi, const ScalarFunction& f,
    const ScalarFunction& g, GSign sign);

// Two-sided difference certification, theorem form:
//   LHS - g(T_U) <= beta1 * I   and   LHS - g(T_L) >= beta2 * I.
std::pair<BoundCertificate, BoundCertificate> difference_certify_theorem(
    const WeightedEnsemble& ens, const PhiMap& phi, const std::vector<Envelope>& envs,
    const ScalarFunction& g);

// Two-sided difference certification, example form:
//   sum_j w_j V^T f(A_j) V - g(S) <= beta1 * I  (and >= beta2 * I)
// with beta1/beta2 from the chord/tangent lines on the window hull.
std::pair<BoundCertificate, BoundCertificate> difference_certify_example(
    const WeightedEnsemble& ens, const PhiMap& phi, const ScalarFunction& f,
    const ScalarFunction& g);

}  // namespace opjensen
