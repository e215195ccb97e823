#include "opjensen/operator_core.hpp"

#include <string>

#include "opjensen/errors.hpp"
#include "opjensen/rng.hpp"

namespace opjensen {

namespace {

Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& A) {
  return 0.5 * (A + A.transpose());
}

Eigen::MatrixXd gaussian_matrix(int rows, int cols, Rng& rng) {
  Eigen::MatrixXd G(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) G(i, j) = rng.gaussian();
  return G;
}

// Thin QR with the usual determinism fix: flip column signs so the diagonal
// of R is positive.
Eigen::MatrixXd orthonormal_columns(const Eigen::MatrixXd& G) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
  Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(G.rows(), G.cols());
  const Eigen::MatrixXd R = Q.transpose() * G;
  for (int j = 0; j < G.cols(); ++j)
    if (R(j, j) < 0.0) Q.col(j) = -Q.col(j);
  return Q;
}

}  // namespace

HermitianOperator::HermitianOperator(Eigen::MatrixXd mat) : mat_(std::move(mat)) {
  if (mat_.rows() != mat_.cols())
    throw BadShape("operator matrix must be square, got " + std::to_string(mat_.rows()) + "x" +
                   std::to_string(mat_.cols()));
  if (mat_.rows() < 1) throw BadShape("operator matrix must be at least 1x1");
  if (!mat_.allFinite()) throw ValidationError("operator matrix has non-finite entries");
  const double scale = mat_.cwiseAbs().maxCoeff();
  const double asym = (mat_ - mat_.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * std::max(1.0, scale))
    throw ValidationError("operator matrix is not symmetric (deviation " + std::to_string(asym) +
                          ")");
  // Tiny asymmetries from upstream arithmetic are folded away so downstream
  // spectral calls see an exactly symmetric matrix.
  mat_ = symmetrize(mat_);
}

HermitianOperator HermitianOperator::identity(int n) {
  return HermitianOperator(Eigen::MatrixXd::Identity(n, n));
}

HermitianOperator HermitianOperator::scaled_identity(int n, double c) {
  return HermitianOperator(c * Eigen::MatrixXd::Identity(n, n));
}

HermitianOperator HermitianOperator::diagonal(const Eigen::VectorXd& entries) {
  return HermitianOperator(Eigen::MatrixXd(entries.asDiagonal()));
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& other) const {
  if (dim() != other.dim()) throw DimensionMismatch("operator sum: dimensions differ");
  return HermitianOperator(mat_ + other.mat_);
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& other) const {
  if (dim() != other.dim()) throw DimensionMismatch("operator difference: dimensions differ");
  return HermitianOperator(mat_ - other.mat_);
}

HermitianOperator HermitianOperator::scaled(double c) const {
  return HermitianOperator(c * mat_);
}

SpectralDecomposition spectral_decompose(const HermitianOperator& A) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(A.matrix());
  if (solver.info() != Eigen::Success)
    throw ConvergenceFailure("eigendecomposition did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Interval spectrum_bounds(const HermitianOperator& A) {
  const auto sd = spectral_decompose(A);
  return {sd.eigenvalues(0), sd.eigenvalues(sd.eigenvalues.size() - 1)};
}

HermitianOperator apply_scalar(const ScalarFunction& f, const HermitianOperator& A) {
  const auto sd = spectral_decompose(A);
  Eigen::VectorXd mapped(sd.eigenvalues.size());
  for (int i = 0; i < sd.eigenvalues.size(); ++i) {
    const double lam = sd.eigenvalues(i);
    if (!f.domain_contains(lam))
      throw DomainViolation("apply_scalar: eigenvalue " + std::to_string(lam) +
                            " escapes the domain of " + f.name());
    mapped(i) = f(lam);
  }
  const Eigen::MatrixXd out =
      sd.eigenvectors * mapped.asDiagonal() * sd.eigenvectors.transpose();
  return HermitianOperator(symmetrize(out));
}

HermitianOperator apply_polynomial(const Polynomial& p, const HermitianOperator& A) {
  const int n = A.dim();
  const auto& c = p.coeffs();
  Eigen::MatrixXd acc = Eigen::MatrixXd::Constant(n, n, 0.0);
  acc.diagonal().setConstant(c.back());
  for (int i = static_cast<int>(c.size()) - 2; i >= 0; --i) {
    acc = acc * A.matrix();
    acc.diagonal().array() += c[i];
  }
  return HermitianOperator(symmetrize(acc));
}

HermitianOperator symmetrized_product(const HermitianOperator& A, const HermitianOperator& B) {
  if (A.dim() != B.dim()) throw DimensionMismatch("symmetrized product: dimensions differ");
  return HermitianOperator(symmetrize(A.matrix() * B.matrix()));
}

double commutator_norm(const HermitianOperator& A, const HermitianOperator& B) {
  if (A.dim() != B.dim()) throw DimensionMismatch("commutator: dimensions differ");
  return (A.matrix() * B.matrix() - B.matrix() * A.matrix()).cwiseAbs().maxCoeff();
}

OrderCertificate loewner_leq(const HermitianOperator& A, const HermitianOperator& B, double tol) {
  if (A.dim() != B.dim()) throw DimensionMismatch("loewner_leq: dimensions differ");
  const HermitianOperator gap = B - A;
  const auto sd = spectral_decompose(gap);
  OrderCertificate cert;
  cert.gap_min_eig = sd.eigenvalues(0);
  cert.tol = tol;
  cert.holds = cert.gap_min_eig >= -tol;
  return cert;
}

double certification_tol(const HermitianOperator& A, const HermitianOperator& B, double scale) {
  return scale * 1e-8 * std::max({1.0, A.max_abs(), B.max_abs()});
}

HermitianOperator random_hermitian(int n, double m, double M, uint64_t seed) {
  if (n < 1) throw BadShape("random_hermitian needs n >= 1");
  if (!(m <= M)) throw ValidationError("random_hermitian needs m <= M");
  Rng rng(seed);
  Eigen::VectorXd evals(n);
  for (int i = 0; i < n; ++i) evals(i) = rng.uniform(m, M);
  if (n >= 2) {
    evals(0) = m;  // force both window endpoints into the spectrum
    evals(1) = M;
  }
  const Eigen::MatrixXd Q = orthonormal_columns(gaussian_matrix(n, n, rng));
  const Eigen::MatrixXd A = Q * evals.asDiagonal() * Q.transpose();
  return HermitianOperator(symmetrize(A));
}

Eigen::MatrixXd random_isometry(int rows, int cols, uint64_t seed) {
  if (rows < cols)
    throw BadShape("random_isometry: need rows >= cols, got " + std::to_string(rows) + "x" +
                   std::to_string(cols));
  if (cols < 1) throw BadShape("random_isometry needs cols >= 1");
  Rng rng(seed);
  return orthonormal_columns(gaussian_matrix(rows, cols, rng));
}

}  // namespace opjensen
