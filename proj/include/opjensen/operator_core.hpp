#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "opjensen/interval.hpp"
#include "opjensen/polynomial.hpp"
#include "opjensen/scalar_function.hpp"

namespace opjensen {

// Real symmetric matrix with validated shape: square, finite entries, and
// symmetric to within 1e-12 relative to the largest entry magnitude.
class HermitianOperator {
 public:
  explicit HermitianOperator(Eigen::MatrixXd mat);

  static HermitianOperator identity(int n);
  static HermitianOperator scaled_identity(int n, double c);
  static HermitianOperator diagonal(const Eigen::VectorXd& entries);

  int dim() const { return static_cast<int>(mat_.rows()); }
  const Eigen::MatrixXd& matrix() const { return mat_; }
  double max_abs() const { return mat_.cwiseAbs().maxCoeff(); }

  HermitianOperator operator+(const HermitianOperator& other) const;
  HermitianOperator operator-(const HermitianOperator& other) const;
  HermitianOperator scaled(double c) const;

 private:
  Eigen::MatrixXd mat_;
};

struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // orthonormal columns, same order
};

SpectralDecomposition spectral_decompose(const HermitianOperator& A);

// [min eigenvalue, max eigenvalue].
Interval spectrum_bounds(const HermitianOperator& A);

// f applied through the spectral decomposition: Q f(Lambda) Q^T.  Every
// eigenvalue must lie in the domain of f (DomainViolation otherwise).
HermitianOperator apply_scalar(const ScalarFunction& f, const HermitianOperator& A);

// p(A) evaluated by Horner in matrix arithmetic; agrees with the spectral
// route to roundoff and exercises a genuinely different code path.
HermitianOperator apply_polynomial(const Polynomial& p, const HermitianOperator& A);

// Symmetrized product (A*B + B*A)/2.  Equals A*B when A and B commute.
HermitianOperator symmetrized_product(const HermitianOperator& A, const HermitianOperator& B);

// Largest absolute entry of A*B - B*A; zero iff the operators commute.
double commutator_norm(const HermitianOperator& A, const HermitianOperator& B);

// Certificate for A <= B in the Loewner order: holds iff the smallest
// eigenvalue of B - A is >= -tol.
struct OrderCertificate {
  double gap_min_eig = 0.0;
  double tol = 0.0;
  bool holds = false;
};

OrderCertificate loewner_leq(const HermitianOperator& A, const HermitianOperator& B, double tol);

// Certification tolerance convention used everywhere a Loewner comparison is
// emitted: 1e-8 * max(1, |A|_max, |B|_max), times an optional caller scale.
double certification_tol(const HermitianOperator& A, const HermitianOperator& B,
                         double scale = 1.0);

// Random symmetric matrix with i.i.d. uniform eigenvalues on [m, M] under a
// Haar-like orthonormal eigenbasis (Gaussian matrix, QR-orthonormalized).
// For n >= 2 the endpoints m and M are forced into the spectrum so order
// comparisons get probed at equality.  Deterministic per seed.
HermitianOperator random_hermitian(int n, double m, double M, uint64_t seed);

// Column-orthonormal rows x cols matrix (V^T V = I), Gaussian + thin QR with
// the sign convention R_ii > 0.  BadShape if rows < cols.
Eigen::MatrixXd random_isometry(int rows, int cols, uint64_t seed);

}  // namespace opjensen
