#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>

#include "optcv/covariance.hpp"
#include "optcv/designs.hpp"
#include "optcv/error.hpp"
#include "optcv/sampling.hpp"

using namespace optcv;

TEST_CASE("streams are reproducible and distinct") {
  SeededStream a(7, 3);
  SeededStream b(7, 3);
  SeededStream c(7, 4);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    differs = differs || (x != c.next_u64());
  }
  CHECK(differs);
}

TEST_CASE("uniform, bounded and shuffle behave") {
  SeededStream s(1, 0);
  double sum = 0.0;
  const int count = 200000;
  for (int i = 0; i < count; ++i) {
    const double u = s.uniform();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(std::abs(sum / count - 0.5) < 0.005);
  for (int i = 0; i < 1000; ++i) CHECK(s.below(7) < 7);

  std::vector<int> v{0, 1, 2, 3, 4, 5, 6, 7};
  s.shuffle(v.begin(), v.end());
  std::vector<int> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7});
}

TEST_CASE("normal moments") {
  SeededStream s(11, 0);
  const int count = 400000;
  double m1 = 0.0, m2 = 0.0, m4 = 0.0;
  for (int i = 0; i < count; ++i) {
    const double z = s.normal();
    m1 += z;
    m2 += z * z;
    m4 += z * z * z * z;
  }
  CHECK(std::abs(m1 / count) < 0.01);
  CHECK(std::abs(m2 / count - 1.0) < 0.01);
  CHECK(std::abs(m4 / count - 3.0) < 0.05);
}

TEST_CASE("multivariate normal reproduces its covariance") {
  Eigen::MatrixXd cov(3, 3);
  cov << 2.0, 0.6, -0.3,
         0.6, 1.0, 0.2,
        -0.3, 0.2, 0.5;
  const Eigen::VectorXd mean = Eigen::Vector3d(1.0, -2.0, 0.5);
  MvnSampler sampler(cov);
  SeededStream s(5, 0);
  const int count = 200000;
  Eigen::Vector3d total = Eigen::Vector3d::Zero();
  Eigen::Matrix3d outer = Eigen::Matrix3d::Zero();
  for (int i = 0; i < count; ++i) {
    const Eigen::VectorXd x = sampler.draw(mean, s);
    total += x;
    outer += (x - mean) * (x - mean).transpose();
  }
  CHECK((total / count - mean).cwiseAbs().maxCoeff() < 0.015);
  CHECK((outer / count - cov).cwiseAbs().maxCoeff() < 0.02);

  Eigen::MatrixXd singular = Eigen::MatrixXd::Ones(2, 2);
  singular(1, 1) = 0.5;
  CHECK_THROWS_AS(MvnSampler{singular}, NotPositiveDefinite);
}

TEST_CASE("paired draws share the cross covariance") {
  const auto points = equally_spaced_points(5, 0.2);
  auto design = std::make_shared<const DesignMatrix>(orthogonal_polynomial_features(points, 1));
  const Eigen::VectorXd beta = Eigen::Vector2d(3.0, -1.0);
  PairedSampler sampler(design, beta, PairedCross{Equicorrelated{1.0, 0.5, 5}, 0.5});
  SeededStream s(9, 0);
  const int count = 100000;
  double cross = 0.0, inner = 0.0, fresh_cross = 0.0;
  for (int i = 0; i < count; ++i) {
    const PairedDraw d = sampler.draw(s);
    const Eigen::VectorXd f = sampler.draw_fresh(s);
    const Eigen::VectorXd e1 = d.y_train - sampler.mean();
    const Eigen::VectorXd e2 = d.y_test - sampler.mean();
    cross += e1(0) * e2(3);
    inner += e1(1) * e1(2);
    fresh_cross += e1(0) * (f(0) - sampler.mean()(0));
  }
  CHECK(std::abs(cross / count - 0.5) < 0.02);
  CHECK(std::abs(inner / count - 0.5) < 0.02);
  CHECK(std::abs(fresh_cross / count) < 0.02);
}

TEST_CASE("ar1 path is stationary with the right autocovariance") {
  SeededStream s(3, 0);
  const std::size_t n = 1000000;
  const Eigen::VectorXd y = sample_ar1(n, 0.5, 1.0, s);
  double var = 0.0, lag1 = 0.0;
  for (std::size_t t = 0; t < n; ++t) var += y(t) * y(t);
  for (std::size_t t = 1; t < n; ++t) lag1 += y(t) * y(t - 1);
  CHECK(std::abs(var / n - 4.0 / 3.0) < 0.02);
  CHECK(std::abs(lag1 / (n - 1) - 2.0 / 3.0) < 0.02);
  CHECK_THROWS_AS(sample_ar1(10, 1.0, 1.0, s), InvalidSpec);
}
