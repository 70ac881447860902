#include "optcv/optimism.hpp"

#include <cmath>
#include <iomanip>
#include <memory>
#include <string>

#include "optcv/error.hpp"
#include "optcv/sampling.hpp"

namespace optcv {
namespace {

void assemble(ErrorDecomposition& d) {
  d.expected_oos = d.irreducible + d.squared_bias + d.estimator_variance;
  d.expected_train = d.expected_oos - d.optimism_train;
  d.expected_test = d.expected_oos - d.optimism_test;
}

}  // namespace

ErrorDecomposition analytic_decomposition(const Eigen::VectorXd& mean, const LinearSmoother& smoother,
                                          const Eigen::MatrixXd& covariance,
                                          const std::optional<Eigen::MatrixXd>& cross_covariance) {
  const Eigen::Index n = mean.size();
  const Eigen::MatrixXd& h = smoother.matrix();
  if (n == 0 || h.rows() != n || covariance.rows() != n || covariance.cols() != n) {
    throw DimensionError("mean, smoother and covariance must share dimension n");
  }
  if (cross_covariance && (cross_covariance->rows() != n || cross_covariance->cols() != n)) {
    throw DimensionError("cross-covariance must be n x n");
  }
  if (!covariance.isApprox(covariance.transpose(), 1e-12)) {
    throw NotPositiveDefinite("covariance is not symmetric");
  }
  if (Eigen::LLT<Eigen::MatrixXd>(covariance).info() != Eigen::Success) {
    throw NotPositiveDefinite("covariance is not positive definite");
  }

  const double scale = 1.0 / static_cast<double>(n);
  const Eigen::MatrixXd h_sigma = h * covariance;
  ErrorDecomposition d;
  d.irreducible = covariance.trace() * scale;
  d.squared_bias = (mean - h * mean).squaredNorm() * scale;
  // tr(A Bᵀ) = Σ A∘B avoids forming the product.
  d.estimator_variance = h_sigma.cwiseProduct(h).sum() * scale;
  d.optimism_train = 2.0 * h_sigma.trace() * scale;
  d.optimism_test = cross_covariance ? 2.0 * cross_covariance->cwiseProduct(h).sum() * scale : 0.0;
  assemble(d);
  return d;
}

ErrorDecomposition closed_form_equicorrelated_ols(std::size_t n, int degree, double rho,
                                                  double sigma2) {
  if (degree < 0 || static_cast<std::size_t>(degree) + 1 > n) {
    throw DimensionError("closed form needs 0 <= degree < n");
  }
  if (auto v = validate(Equicorrelated{sigma2, rho, n}); !v) throw InvalidSpec(v.reason);

  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(degree) + 1.0;
  const double projected = sigma2 * ((1.0 - rho) * p + rho * nn);  // tr HΣ = tr HΣHᵀ
  ErrorDecomposition d;
  d.irreducible = sigma2;
  d.squared_bias = 0.0;
  d.estimator_variance = projected / nn;
  d.optimism_train = 2.0 * projected / nn;
  d.optimism_test = 2.0 * rho * sigma2;
  assemble(d);
  return d;
}

double closed_form_ar1_knn_covariance(double phi, double sigma2, int k) {
  if (k != 2 && k != 4) {
    throw InvalidSpec("closed form available for k in {2, 4}, got k = " + std::to_string(k));
  }
  double total = 0.0;
  for (int lag = 1; lag <= k / 2; ++lag) total += 2.0 * ar1_autocovariance(phi, sigma2, lag);
  return total / static_cast<double>(k);
}

MonteCarloErrors monte_carlo_errors(const DesignMatrix& design, const Eigen::VectorXd& beta,
                                    const PairedCross& covariance, const LinearSmoother& smoother,
                                    std::size_t reps, std::uint64_t seed, unsigned threads) {
  if (reps < 1) throw DimensionError("reps must be >= 1");
  if (smoother.size() != design.rows()) {
    throw DimensionError("smoother size does not match design rows");
  }
  const PairedSampler sampler(std::make_shared<const DesignMatrix>(design), beta, covariance);
  const Eigen::MatrixXd& h = smoother.matrix();
  const double scale = 1.0 / static_cast<double>(design.rows());

  MonteCarloErrors out;
  out.train.resize(reps);
  out.test.resize(reps);
  out.oos.resize(reps);
  parallel_for(reps, threads, [&](std::size_t r) {
    SeededStream stream(seed, r);
    const PairedDraw draw = sampler.draw(stream);
    const Eigen::VectorXd fresh = sampler.draw_fresh(stream);
    const Eigen::VectorXd fitted = h * draw.y_train;
    out.train[r] = (draw.y_train - fitted).squaredNorm() * scale;
    out.test[r] = (draw.y_test - fitted).squaredNorm() * scale;
    out.oos[r] = (fresh - fitted).squaredNorm() * scale;
  });
  out.train_summary = summarize(out.train);
  out.test_summary = summarize(out.test);
  out.oos_summary = summarize(out.oos);
  return out;
}

void write_csv(std::ostream& out, const MonteCarloErrors& errors) {
  out << "rep,train_mse,test_mse,oos_mse\n" << std::setprecision(17);
  for (std::size_t r = 0; r < errors.train.size(); ++r) {
    out << r << ',' << errors.train[r] << ',' << errors.test[r] << ',' << errors.oos[r] << '\n';
  }
}

}  // namespace optcv
