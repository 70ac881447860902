#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <sstream>

#include "optcv/designs.hpp"
#include "optcv/error.hpp"
#include "optcv/smoothers.hpp"

using namespace optcv;

namespace {

// Reference hat matrix from the normal equations, independent of the QR route.
Eigen::MatrixXd normal_equation_hat(const Eigen::MatrixXd& x) {
  const Eigen::MatrixXd gram = x.transpose() * x;
  return x * gram.inverse() * x.transpose();
}

}  // namespace

TEST_CASE("two points with degree one give an orthonormal slope column") {
  const std::vector<double> points{0.0, 1.0};
  const DesignMatrix design = orthogonal_polynomial_features(points, 1);
  REQUIRE(design.rows() == 2);
  REQUIRE(design.cols() == 2);
  CHECK(design.values()(0, 0) == doctest::Approx(1.0));
  CHECK(design.values()(1, 0) == doctest::Approx(1.0));
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(std::abs(design.values()(0, 1)) - r) < 1e-12);
  CHECK(design.values()(0, 1) == doctest::Approx(-design.values()(1, 1)).epsilon(1e-12));
}

TEST_CASE("degree twenty on a hundred points has gram diag(n, 1, ...)") {
  const auto points = equally_spaced_points(100, 0.01);
  const DesignMatrix design = orthogonal_polynomial_features(points, 20);
  const Eigen::MatrixXd gram = design.values().transpose() * design.values();
  Eigen::MatrixXd expected = Eigen::MatrixXd::Identity(21, 21);
  expected(0, 0) = 100.0;
  CHECK((gram - expected).cwiseAbs().maxCoeff() < 1e-8);
  CHECK(design.degree() == 20);
  CHECK(design.has_intercept());

  const Eigen::MatrixXd inverse = gram.inverse();
  CHECK(inverse.trace() == doctest::Approx(20.0 + 1.0 / 100.0).epsilon(1e-12));
}

TEST_CASE("hat matrix is a symmetric idempotent projection") {
  const auto points = equally_spaced_points(40, 0.025);
  const DesignMatrix design = orthogonal_polynomial_features(points, 5);
  const LinearSmoother h = hat_matrix(design);
  const Eigen::MatrixXd& m = h.matrix();
  CHECK((m - m.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((m * m - m).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(m.trace() == doctest::Approx(6.0).epsilon(1e-10));
  CHECK((m.rowwise().sum() - Eigen::VectorXd::Ones(40)).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((m - normal_equation_hat(design.values())).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("hat matrix of a general design matches the normal equations") {
  Eigen::MatrixXd x(6, 3);
  x << 1, 0.5, 2.0,
       1, 1.5, -1.0,
       1, 2.0, 0.3,
       1, -0.7, 4.0,
       1, 3.1, 1.1,
       1, 0.0, 0.0;
  const DesignMatrix design(x, true);
  CHECK((hat_matrix(design).matrix() - normal_equation_hat(x)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("ols fit equals H y") {
  const auto points = equally_spaced_points(30, 1.0 / 30.0);
  const DesignMatrix design = orthogonal_polynomial_features(points, 4);
  Eigen::VectorXd y(30);
  for (int i = 0; i < 30; ++i) y(i) = std::sin(0.37 * i) + 0.1 * i;
  const OlsFit fit = ols_fit(design, y);
  const Eigen::VectorXd via_hat = hat_matrix(design).matrix() * y;
  CHECK((fit.fitted - via_hat).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((design.values() * fit.coefficients - fit.fitted).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("degenerate inputs are rejected") {
  const std::vector<double> repeated{1.0, 1.0, 1.0, 2.0};
  CHECK_THROWS_AS(orthogonal_polynomial_features(repeated, 2), DegenerateInput);
  const std::vector<double> few{0.0, 1.0};
  CHECK_THROWS_AS(orthogonal_polynomial_features(few, 2), DimensionError);
  CHECK_THROWS_AS(orthogonal_polynomial_features(few, -1), DimensionError);
  const std::vector<double> bad{0.0, std::nan(""), 1.0};
  CHECK_THROWS_AS(orthogonal_polynomial_features(bad, 1), DegenerateInput);

  Eigen::MatrixXd collinear(4, 3);
  collinear << 1, 1, 2,
               1, 2, 4,
               1, 3, 6,
               1, 4, 8;
  CHECK_THROWS_AS(hat_matrix(DesignMatrix(collinear, true)), SingularDesign);

  Eigen::MatrixXd no_intercept = Eigen::MatrixXd::Constant(3, 2, 2.0);
  CHECK_THROWS(DesignMatrix(no_intercept, true));
  CHECK_THROWS(DesignMatrix(Eigen::MatrixXd::Ones(2, 3), true));
}

TEST_CASE("design csv has one header and n rows") {
  const std::vector<double> points{0.0, 0.5, 1.0};
  std::ostringstream out;
  write_csv(out, orthogonal_polynomial_features(points, 1));
  const std::string text = out.str();
  CHECK(text.rfind("x0,x1\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);
}
