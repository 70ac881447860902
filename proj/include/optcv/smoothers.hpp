#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace optcv {

class DesignMatrix;

/// An estimator whose fitted values are a fixed linear map of the
/// responses, ŷ = H y.
class LinearSmoother {
 public:
  LinearSmoother(Eigen::MatrixXd weights, std::string label);

  const Eigen::MatrixXd& matrix() const { return weights_; }
  const std::string& label() const { return label_; }
  Eigen::Index size() const { return weights_.rows(); }

 private:
  Eigen::MatrixXd weights_;
  std::string label_;
};

/// OLS hat matrix wrapped as a smoother labelled "ols".
LinearSmoother ols_smoother(const DesignMatrix& design);

/// Symmetric k-nearest-neighbour averaging along an ordering.
///
/// `ordering[pos]` is the observation sitting at time position `pos`; an empty
/// ordering means the identity. Each observation averages the responses of the
/// observations within k/2 positions on either side, excluding itself. Near
/// the ends only the neighbours that exist are used, so the diagonal is zero
/// and every row sums to one.
LinearSmoother knn_smoother(std::size_t n, int k,
                            std::span<const std::size_t> ordering = {});

Eigen::VectorXd apply(const LinearSmoother& smoother, const Eigen::VectorXd& y);

/// trace(H).
double degrees_of_freedom(const LinearSmoother& smoother);

}  // namespace optcv
