#pragma once

#include <Eigen/Dense>
#include <vector>

#include "opjensen/operator_core.hpp"

namespace opjensen {

// Nonlinear positive-structure map
//
//   Phi(X) = V^T ( sum_i a_i X^i ) V,
//
// where V is a column-orthonormal input_dim x output_dim matrix and the
// coefficient list a_0..a_I (degree I <= 12) splits into the index sets
// plus_indices (a_i >= 0; zeros land here) and minus_indices (a_i < 0).
class PhiMap {
 public:
  PhiMap(std::vector<double> coeffs, Eigen::MatrixXd V);

  // Plain compression Phi(X) = V^T X V.
  static PhiMap linear(Eigen::MatrixXd V);
  // Identity on n x n matrices: coefficients {0, 1}, V = I_n.
  static PhiMap identity_map(int n);

  int input_dim() const { return static_cast<int>(V_.rows()); }
  int output_dim() const { return static_cast<int>(V_.cols()); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  const Eigen::MatrixXd& isometry() const { return V_; }

  std::vector<int> plus_indices() const;
  std::vector<int> minus_indices() const;

  // True iff the map is exactly X -> V^T X V (coefficients {0, 1}).
  bool is_positive_linear() const;

  HermitianOperator apply(const HermitianOperator& X) const;

  // Compression only: V^T X V without the coefficient sum.
  HermitianOperator compress(const HermitianOperator& X) const;

 private:
  std::vector<double> coeffs_;
  Eigen::MatrixXd V_;
};

}  // namespace opjensen
