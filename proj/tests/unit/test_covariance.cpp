#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "optcv/covariance.hpp"
#include "optcv/error.hpp"

using namespace optcv;

TEST_CASE("ar1 matrix with phi one half") {
  const Eigen::MatrixXd s = materialize(Ar1{1.0, 0.5, 4});
  CHECK(s(0, 0) == doctest::Approx(4.0 / 3.0));
  CHECK(s(0, 1) == doctest::Approx(2.0 / 3.0));
  CHECK(s(1, 3) == doctest::Approx(1.0 / 3.0));
  CHECK(s(3, 0) == doctest::Approx(1.0 / 6.0));
  CHECK(ar1_autocovariance(0.5, 1.0, -2) == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS_AS(ar1_autocovariance(1.0, 1.0, 0), InvalidSpec);
}

TEST_CASE("equicorrelated eigenvalues") {
  const double sigma2 = 2.0;
  const double rho = 0.3;
  const std::size_t n = 7;
  const Eigen::MatrixXd s = materialize(Equicorrelated{sigma2, rho, n});
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s);
  const Eigen::VectorXd values = solver.eigenvalues();
  for (Eigen::Index i = 0; i + 1 < values.size(); ++i) {
    CHECK(values(i) == doctest::Approx(sigma2 * (1 - rho)));
  }
  CHECK(values(values.size() - 1) == doctest::Approx(sigma2 * (1 + (n - 1) * rho)));
}

TEST_CASE("parameter bounds") {
  CHECK(validate(Equicorrelated{1.0, 0.99, 10}).ok);
  CHECK_FALSE(validate(Equicorrelated{1.0, 1.0, 10}).ok);
  CHECK_FALSE(validate(Equicorrelated{1.0, -1.0 / 9.0, 10}).ok);
  CHECK(validate(Equicorrelated{1.0, -0.1, 10}).ok);
  CHECK_FALSE(validate(Equicorrelated{0.0, 0.1, 10}).ok);
  CHECK_FALSE(validate(Ar1{1.0, -1.0, 5}).ok);
  CHECK_FALSE(validate(Iid{-1.0, 3}).ok);
  CHECK_THROWS_AS(materialize(Ar1{1.0, 1.2, 3}), InvalidSpec);
  CHECK_FALSE(validate(PairedCross{Equicorrelated{1.0, 0.2, 5}, 0.9}).ok);
  CHECK(validate(PairedCross{Equicorrelated{1.0, 0.5, 5}, 0.5}).ok);
}

TEST_CASE("group block and paired cross layouts") {
  const Eigen::MatrixXd g = materialize(GroupBlock{1.5, 0.4, {"a", "b", "a"}});
  CHECK(g(0, 2) == doctest::Approx(0.6));
  CHECK(g(0, 1) == 0.0);
  CHECK(g(1, 1) == doctest::Approx(1.5));

  const Eigen::MatrixXd p = materialize(PairedCross{Equicorrelated{2.0, 0.5, 3}, 0.25});
  REQUIRE(p.rows() == 6);
  CHECK(p(0, 1) == doctest::Approx(1.0));
  CHECK(p(0, 3) == doctest::Approx(0.5));
  CHECK(p(5, 5) == doctest::Approx(2.0));
  CHECK(dimension(PairedCross{Equicorrelated{2.0, 0.5, 3}, 0.25}) == 6);
  CHECK((p - p.transpose()).cwiseAbs().maxCoeff() == 0.0);
}
