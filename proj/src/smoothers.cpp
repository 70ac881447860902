#include "optcv/smoothers.hpp"

#include <numeric>
#include <string>

#include "optcv/designs.hpp"
#include "optcv/error.hpp"

namespace optcv {

LinearSmoother::LinearSmoother(Eigen::MatrixXd weights, std::string label)
    : weights_(std::move(weights)), label_(std::move(label)) {
  if (weights_.rows() != weights_.cols()) {
    throw DimensionError("smoother matrix must be square");
  }
  if (!weights_.allFinite()) {
    throw DegenerateInput("smoother matrix contains non-finite entries");
  }
}

LinearSmoother ols_smoother(const DesignMatrix& design) { return hat_matrix(design); }

LinearSmoother knn_smoother(std::size_t n, int k, std::span<const std::size_t> ordering) {
  if (k < 2 || k % 2 != 0) {
    throw DimensionError("k must be a positive even integer, got " + std::to_string(k));
  }
  if (n < static_cast<std::size_t>(k) + 1) {
    throw DimensionError("knn smoother with k=" + std::to_string(k) + " needs n >= " +
                         std::to_string(k + 1) + ", got " + std::to_string(n));
  }
  std::vector<std::size_t> order(n);
  if (ordering.empty()) {
    std::iota(order.begin(), order.end(), std::size_t{0});
  } else {
    if (ordering.size() != n) throw DimensionError("ordering length must equal n");
    std::vector<bool> seen(n, false);
    for (std::size_t obs : ordering) {
      if (obs >= n || seen[obs]) throw DimensionError("ordering must be a permutation of 0..n-1");
      seen[obs] = true;
    }
    order.assign(ordering.begin(), ordering.end());
  }

  const auto half = static_cast<std::ptrdiff_t>(k / 2);
  const auto size = static_cast<std::ptrdiff_t>(n);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(size, size);
  for (std::ptrdiff_t pos = 0; pos < size; ++pos) {
    const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, pos - half);
    const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(size - 1, pos + half);
    const double weight = 1.0 / static_cast<double>(hi - lo);
    const auto row = static_cast<Eigen::Index>(order[pos]);
    for (std::ptrdiff_t other = lo; other <= hi; ++other) {
      if (other != pos) h(row, static_cast<Eigen::Index>(order[other])) = weight;
    }
  }
  return LinearSmoother(std::move(h), "knn" + std::to_string(k));
}

Eigen::VectorXd apply(const LinearSmoother& smoother, const Eigen::VectorXd& y) {
  if (y.size() != smoother.size()) {
    throw DimensionError("response length " + std::to_string(y.size()) +
                         " does not match smoother size " + std::to_string(smoother.size()));
  }
  return smoother.matrix() * y;
}

double degrees_of_freedom(const LinearSmoother& smoother) { return smoother.matrix().trace(); }

}  // namespace optcv
