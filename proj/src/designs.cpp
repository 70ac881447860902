#include "optcv/designs.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <set>
#include <string>

#include "optcv/error.hpp"

namespace optcv {

DesignMatrix::DesignMatrix(Eigen::MatrixXd values, bool has_intercept,
                           std::optional<int> degree)
    : values_(std::move(values)), has_intercept_(has_intercept), degree_(degree) {
  if (values_.cols() < 1 || values_.rows() < values_.cols()) {
    throw DimensionError("design must satisfy n >= p >= 1, got n=" +
                         std::to_string(values_.rows()) +
                         ", p=" + std::to_string(values_.cols()));
  }
  if (!values_.allFinite()) {
    throw DegenerateInput("design contains non-finite entries");
  }
  if (has_intercept_ && !(values_.col(0).array() == 1.0).all()) {
    throw DegenerateInput("intercept column must be all ones");
  }
}

DesignMatrix orthogonal_polynomial_features(std::span<const double> points, int degree) {
  const auto n = static_cast<Eigen::Index>(points.size());
  if (degree < 0) throw DimensionError("polynomial degree must be non-negative");
  if (degree + 1 > n) {
    throw DimensionError("degree " + std::to_string(degree) + " needs at least " +
                         std::to_string(degree + 1) + " points, got " +
                         std::to_string(n));
  }
  if (!std::all_of(points.begin(), points.end(), [](double v) { return std::isfinite(v); })) {
    throw DegenerateInput("polynomial points must be finite");
  }
  const std::set<double> distinct(points.begin(), points.end());
  if (static_cast<int>(distinct.size()) < degree + 1) {
    throw DegenerateInput("degree " + std::to_string(degree) + " needs " +
                          std::to_string(degree + 1) + " distinct points, got " +
                          std::to_string(distinct.size()));
  }

  Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(points.data(), n);
  x.array() -= x.mean();

  // Columns of `basis` are the monic orthogonal polynomials evaluated at x.
  Eigen::MatrixXd basis(n, degree + 1);
  basis.col(0).setOnes();
  for (int j = 0; j < degree; ++j) {
    const Eigen::VectorXd& pj = basis.col(j);
    const double norm_j = pj.squaredNorm();
    const double alpha = (x.array() * pj.array().square()).sum() / norm_j;
    Eigen::VectorXd next = (x.array() - alpha) * pj.array();
    if (j > 0) {
      next -= (norm_j / basis.col(j - 1).squaredNorm()) * basis.col(j - 1);
    }
    // Lanczos-style recurrences drift at high degree; one full
    // Gram-Schmidt sweep restores orthogonality.
    for (int i = 0; i <= j; ++i) {
      const Eigen::VectorXd& pi = basis.col(i);
      next -= (pi.dot(next) / pi.squaredNorm()) * pi;
    }
    basis.col(j + 1) = next;
  }

  Eigen::MatrixXd values(n, degree + 1);
  values.col(0).setOnes();
  for (int j = 1; j <= degree; ++j) {
    const double norm = basis.col(j).norm();
    if (!(norm > 0.0)) throw DegenerateInput("polynomial column vanished");
    values.col(j) = basis.col(j) / norm;
  }
  return DesignMatrix(std::move(values), true, degree);
}

std::vector<double> equally_spaced_points(std::size_t n, double step) {
  std::vector<double> points(n);
  for (std::size_t i = 0; i < n; ++i) points[i] = static_cast<double>(i) * step;
  return points;
}

namespace {

void require_full_rank(const Eigen::MatrixXd& x) {
  const Eigen::MatrixXd gram = x.transpose() * x;
  Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
  const double rcond = ldlt.info() == Eigen::Success ? ldlt.rcond() : 0.0;
  if (!(rcond >= kSingularRcond) || !ldlt.isPositive()) {
    throw SingularDesign("XᵀX is numerically singular (rcond=" + std::to_string(rcond) + ")");
  }
}

}  // namespace

LinearSmoother hat_matrix(const DesignMatrix& design) {
  const Eigen::MatrixXd& x = design.values();
  require_full_rank(x);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
  const Eigen::MatrixXd q =
      qr.householderQ() * Eigen::MatrixXd::Identity(x.rows(), x.cols());
  Eigen::MatrixXd h = q * q.transpose();
  // Symmetric by construction up to rounding; make it exact.
  h = 0.5 * (h + h.transpose()).eval();
  return LinearSmoother(std::move(h), "ols");
}

OlsFit ols_fit(const DesignMatrix& design, const Eigen::VectorXd& y) {
  const Eigen::MatrixXd& x = design.values();
  if (y.size() != x.rows()) {
    throw DimensionError("response length " + std::to_string(y.size()) +
                         " does not match design rows " + std::to_string(x.rows()));
  }
  require_full_rank(x);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
  OlsFit fit;
  fit.coefficients = qr.solve(y);
  fit.fitted = x * fit.coefficients;
  return fit;
}

void write_csv(std::ostream& out, const DesignMatrix& design) {
  const Eigen::MatrixXd& x = design.values();
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    out << (j ? "," : "") << 'x' << j;
  }
  out << '\n' << std::setprecision(17);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      out << (j ? "," : "") << x(i, j);
    }
    out << '\n';
  }
}

}  // namespace optcv
