#pragma once

#include <optional>
#include <ostream>
#include <span>

#include <Eigen/Dense>

#include "optcv/smoothers.hpp"

namespace optcv {

/// Fixed-X regression design. Column 0 is the all-ones intercept when
/// `has_intercept()` is true.
class DesignMatrix {
 public:
  /// Validates shape (n ≥ p ≥ 1), finiteness and the intercept column.
  DesignMatrix(Eigen::MatrixXd values, bool has_intercept,
               std::optional<int> degree = std::nullopt);

  const Eigen::MatrixXd& values() const { return values_; }
  Eigen::Index rows() const { return values_.rows(); }
  Eigen::Index cols() const { return values_.cols(); }
  bool has_intercept() const { return has_intercept_; }
  /// Set for polynomial designs only.
  std::optional<int> degree() const { return degree_; }

 private:
  Eigen::MatrixXd values_;
  bool has_intercept_;
  std::optional<int> degree_;
};

/// Intercept plus `degree` orthonormal polynomial columns.
///
/// The non-constant columns come from the Stieltjes three-term recurrence on
/// the centred points with a full re-orthogonalisation pass, then are scaled
/// to unit Euclidean norm, so XᵀX = diag(n, 1, …, 1).
DesignMatrix orthogonal_polynomial_features(std::span<const double> points, int degree);

/// n points 0, step, 2·step, ….
std::vector<double> equally_spaced_points(std::size_t n, double step);

/// H = X (XᵀX)⁻¹ Xᵀ, computed from a thin QR factor as Q Qᵀ.
LinearSmoother hat_matrix(const DesignMatrix& design);

struct OlsFit {
  Eigen::VectorXd coefficients;
  Eigen::VectorXd fitted;
};

OlsFit ols_fit(const DesignMatrix& design, const Eigen::VectorXd& y);

/// Reciprocal condition number below which XᵀX is treated as singular.
inline constexpr double kSingularRcond = 1e-12;

/// Row-major CSV with header `x0,x1,...`.
void write_csv(std::ostream& out, const DesignMatrix& design);

}  // namespace optcv
