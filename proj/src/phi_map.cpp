#include "opjensen/phi_map.hpp"

#include <cmath>
#include <string>

#include "opjensen/errors.hpp"
#include "opjensen/polynomial.hpp"

namespace opjensen {

namespace {
constexpr int kMaxDegree = 12;
}

PhiMap::PhiMap(std::vector<double> coeffs, Eigen::MatrixXd V)
    : coeffs_(std::move(coeffs)), V_(std::move(V)) {
  if (coeffs_.empty()) throw ValidationError("coefficient list must be nonempty");
  if (static_cast<int>(coeffs_.size()) - 1 > kMaxDegree)
    throw ValidationError("coefficient degree exceeds the cap of " + std::to_string(kMaxDegree));
  for (double c : coeffs_)
    if (!std::isfinite(c)) throw ValidationError("coefficient is not finite");
  if (V_.rows() < V_.cols())
    throw BadShape("isometry must be tall: rows >= cols, got " + std::to_string(V_.rows()) + "x" +
                   std::to_string(V_.cols()));
  if (V_.cols() < 1) throw BadShape("isometry needs at least one column");
  if (!V_.allFinite()) throw ValidationError("isometry has non-finite entries");
  const Eigen::MatrixXd gram = V_.transpose() * V_;
  const double defect =
      (gram - Eigen::MatrixXd::Identity(V_.cols(), V_.cols())).cwiseAbs().maxCoeff();
  if (defect > 1e-10)
    throw ValidationError("columns are not orthonormal (V^T V deviates from I by " +
                          std::to_string(defect) + ")");
}

PhiMap PhiMap::linear(Eigen::MatrixXd V) { return PhiMap({0.0, 1.0}, std::move(V)); }

PhiMap PhiMap::identity_map(int n) {
  return PhiMap({0.0, 1.0}, Eigen::MatrixXd::Identity(n, n));
}

std::vector<int> PhiMap::plus_indices() const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(coeffs_.size()); ++i)
    if (coeffs_[i] >= 0.0) out.push_back(i);
  return out;
}

std::vector<int> PhiMap::minus_indices() const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(coeffs_.size()); ++i)
    if (coeffs_[i] < 0.0) out.push_back(i);
  return out;
}

bool PhiMap::is_positive_linear() const {
  return coeffs_.size() == 2 && coeffs_[0] == 0.0 && coeffs_[1] == 1.0;
}

HermitianOperator PhiMap::apply(const HermitianOperator& X) const {
  const HermitianOperator inner = apply_polynomial(Polynomial(coeffs_), X);
  return compress(inner);
}

HermitianOperator PhiMap::compress(const HermitianOperator& X) const {
  if (X.dim() != input_dim())
    throw DimensionMismatch("map expects " + std::to_string(input_dim()) + "x" +
                            std::to_string(input_dim()) + " input, got " +
                            std::to_string(X.dim()));
  const Eigen::MatrixXd out = V_.transpose() * X.matrix() * V_;
  return HermitianOperator(0.5 * (out + out.transpose()));
}

}  // namespace opjensen
