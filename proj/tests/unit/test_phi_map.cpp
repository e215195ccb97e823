#include <doctest.h>

#include <Eigen/Dense>

#include "opjensen/errors.hpp"
#include "opjensen/operator_core.hpp"
#include "opjensen/phi_map.hpp"
#include "opjensen/rng.hpp"

using opjensen::HermitianOperator;
using opjensen::PhiMap;

TEST_CASE("construction validates the pieces") {
  const Eigen::MatrixXd I3 = Eigen::MatrixXd::Identity(3, 3);
  CHECK_THROWS_AS(PhiMap({}, I3), opjensen::ValidationError);
  CHECK_THROWS_AS(PhiMap(std::vector<double>(14, 1.0), I3), opjensen::ValidationError);
  CHECK_THROWS_AS(PhiMap({0.0, 1.0}, Eigen::MatrixXd::Ones(3, 3)),
                  opjensen::ValidationError);  // not orthonormal
  CHECK_THROWS_AS(PhiMap({0.0, 1.0}, Eigen::MatrixXd::Identity(2, 3)), opjensen::BadShape);
}

TEST_CASE("coefficient sign split") {
  const PhiMap phi({0.5, -1.0, 0.0, 2.0}, Eigen::MatrixXd::Identity(4, 4));
  CHECK(phi.plus_indices() == std::vector<int>{0, 2, 3});
  CHECK(phi.minus_indices() == std::vector<int>{1});
  CHECK(phi.degree() == 3);
}

TEST_CASE("identity and linear maps") {
  const PhiMap id = PhiMap::identity_map(3);
  CHECK(id.is_positive_linear());
  const HermitianOperator A = opjensen::random_hermitian(3, 0.0, 1.0, 5);
  CHECK((id.apply(A).matrix() - A.matrix()).cwiseAbs().maxCoeff() <= 1e-14);

  const Eigen::MatrixXd V = opjensen::random_isometry(5, 2, 8);
  const PhiMap lin = PhiMap::linear(V);
  CHECK(lin.is_positive_linear());
  CHECK(lin.input_dim() == 5);
  CHECK(lin.output_dim() == 2);
  const HermitianOperator B = opjensen::random_hermitian(5, -1.0, 1.0, 9);
  const Eigen::MatrixXd direct = V.transpose() * B.matrix() * V;
  CHECK((lin.apply(B).matrix() - direct).cwiseAbs().maxCoeff() <= 1e-12);
  // compress agrees with apply for the plain compression map
  CHECK((lin.compress(B).matrix() - direct).cwiseAbs().maxCoeff() <= 1e-12);

  CHECK_FALSE(PhiMap({0.0, 1.0, 0.5}, V).is_positive_linear());
  CHECK_FALSE(PhiMap({0.1, 1.0}, V).is_positive_linear());
}

TEST_CASE("apply is self-adjoint and matches the spectral route") {
  opjensen::Rng rng(40);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = rng.uniform_int(2, 6);
    const int out = rng.uniform_int(1, n);
    std::vector<double> coeffs(static_cast<size_t>(rng.uniform_int(1, 4)) + 1);
    for (double& c : coeffs) c = rng.uniform(-1.0, 1.0);
    const PhiMap phi(coeffs, opjensen::random_isometry(n, out, 300 + trial));
    const HermitianOperator X = opjensen::random_hermitian(n, -1.5, 2.0, 500 + trial);

    const HermitianOperator y = phi.apply(X);
    CHECK(y.dim() == out);
    CHECK((y.matrix() - y.matrix().transpose()).cwiseAbs().maxCoeff() <= 1e-12);

    // against an independent evaluation through the eigendecomposition of X
    const auto sd = spectral_decompose(X);
    Eigen::VectorXd pe(n);
    const opjensen::Polynomial p(coeffs);
    for (int i = 0; i < n; ++i) pe(i) = p(sd.eigenvalues(i));
    const Eigen::MatrixXd pX =
        sd.eigenvectors * pe.asDiagonal() * sd.eigenvectors.transpose();
    const Eigen::MatrixXd want =
        phi.isometry().transpose() * pX * phi.isometry();
    CHECK((y.matrix() - want).cwiseAbs().maxCoeff() <=
          1e-9 * std::max(1.0, y.max_abs()));
  }
}

TEST_CASE("positive linear maps are order preserving") {
  opjensen::Rng rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = rng.uniform_int(2, 6);
    const int out = rng.uniform_int(1, n);
    const PhiMap phi = PhiMap::linear(opjensen::random_isometry(n, out, 700 + trial));

    // build an ordered pair: B = A + (psd bump)
    const HermitianOperator A = opjensen::random_hermitian(n, -1.0, 1.0, 800 + trial);
    const HermitianOperator bump = opjensen::random_hermitian(n, 0.0, 0.7, 900 + trial);
    const HermitianOperator B = A + bump;

    const auto cert = loewner_leq(phi.apply(A), phi.apply(B),
                                  opjensen::certification_tol(phi.apply(A), phi.apply(B)));
    CHECK(cert.holds);
  }
}

TEST_CASE("dimension mismatch is rejected") {
  const PhiMap phi = PhiMap::identity_map(3);
  CHECK_THROWS_AS(phi.apply(HermitianOperator::identity(4)), opjensen::DimensionMismatch);
  CHECK_THROWS_AS(phi.compress(HermitianOperator::identity(2)), opjensen::DimensionMismatch);
}
