#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "optcv/error.hpp"
#include "optcv/smoothers.hpp"

using namespace optcv;

TEST_CASE("2-NN on three points") {
  const LinearSmoother s = knn_smoother(3, 2);
  Eigen::MatrixXd expected(3, 3);
  expected << 0, 1, 0,
              0.5, 0, 0.5,
              0, 1, 0;
  CHECK((s.matrix() - expected).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(degrees_of_freedom(s) == 0.0);
  CHECK(s.label() == "knn2");
}

TEST_CASE("4-NN interior weights are a quarter") {
  const LinearSmoother s = knn_smoother(9, 4);
  for (Eigen::Index j = 0; j < 9; ++j) {
    const double expected = (j == 4) ? 0.0 : (std::abs(j - 4) <= 2 ? 0.25 : 0.0);
    CHECK(s.matrix()(4, j) == doctest::Approx(expected));
  }
  CHECK((s.matrix().rowwise().sum() - Eigen::VectorXd::Ones(9)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(s.matrix()(0, 1) == doctest::Approx(0.5));
}

TEST_CASE("ordering permutes the neighbourhoods") {
  const std::vector<std::size_t> ordering{2, 0, 1};
  const LinearSmoother s = knn_smoother(3, 2, ordering);
  CHECK(s.matrix()(0, 2) == doctest::Approx(0.5));
  CHECK(s.matrix()(0, 1) == doctest::Approx(0.5));
  CHECK(s.matrix()(2, 0) == doctest::Approx(1.0));
}

TEST_CASE("apply is linear") {
  const LinearSmoother s = knn_smoother(6, 2);
  Eigen::VectorXd a(6), b(6);
  a << 1, 2, 3, 4, 5, 6;
  b << -1, 0.5, 2, 0, 3, 1;
  const Eigen::VectorXd lhs = apply(s, 2.0 * a - 3.0 * b);
  const Eigen::VectorXd rhs = 2.0 * apply(s, a) - 3.0 * apply(s, b);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
  CHECK_THROWS_AS(apply(s, Eigen::VectorXd::Ones(5)), DimensionError);
}

TEST_CASE("invalid k") {
  CHECK_THROWS_AS(knn_smoother(10, 3), DimensionError);
  CHECK_THROWS_AS(knn_smoother(10, 0), DimensionError);
  CHECK_THROWS_AS(knn_smoother(4, 4), DimensionError);
  CHECK_THROWS(LinearSmoother(Eigen::MatrixXd::Ones(2, 3), "bad"));
}
