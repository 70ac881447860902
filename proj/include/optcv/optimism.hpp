#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include <Eigen/Dense>

#include "optcv/covariance.hpp"
#include "optcv/designs.hpp"
#include "optcv/monte_carlo.hpp"
#include "optcv/smoothers.hpp"

namespace optcv {

/// Expected errors of a fixed-X linear smoother, all scaled by 1/n.
///
///   expected_oos   = irreducible + squared_bias + estimator_variance
///   expected_train = expected_oos − optimism_train
///   expected_test  = expected_oos − optimism_test
struct ErrorDecomposition {
  double irreducible = 0.0;         ///< tr Σ / n
  double squared_bias = 0.0;        ///< ‖μ − Hμ‖² / n
  double estimator_variance = 0.0;  ///< tr HΣHᵀ / n
  double optimism_train = 0.0;      ///< 2 tr HΣ / n
  double optimism_test = 0.0;       ///< 2 tr C Hᵀ / n, C = Cov(Y_test, Y_train)
  double expected_train = 0.0;
  double expected_test = 0.0;
  double expected_oos = 0.0;
};

/// Evaluates the decomposition from the mean, the smoother, the response
/// covariance and, when a test copy shares noise with the training copy, the
/// cross-covariance Cov(Y_test, Y_train). An absent cross-covariance means an
/// independent test draw.
ErrorDecomposition analytic_decomposition(const Eigen::VectorXd& mean, const LinearSmoother& smoother,
                                          const Eigen::MatrixXd& covariance,
                                          const std::optional<Eigen::MatrixXd>& cross_covariance);

/// Closed form for OLS on an orthogonal design with intercept (XᵀX =
/// diag(n, 1, …, 1)), p = d + 1 columns, and equicorrelated noise shared
/// between training and test copies:
///   tr HΣ = tr HΣHᵀ = σ²((1−ρ)(d+1) + ρn),   test optimism = 2ρσ².
ErrorDecomposition closed_form_equicorrelated_ols(std::size_t n, int degree, double rho,
                                                  double sigma2);

/// Cov(Y_t, Ŷ_t) for a held-out AR(1) point whose k symmetric neighbours all
/// sit in training and Ŷ_t is their plain average:
///   k = 2:  γ(1)              = σ²φ / (1−φ²)
///   k = 4:  (γ(1) + γ(2)) / 2 = σ²(φ+φ²) / (2(1−φ²))
double closed_form_ar1_knn_covariance(double phi, double sigma2, int k);

/// Per-replication mean squared errors from repeated paired draws.
struct MonteCarloErrors {
  std::vector<double> train;
  std::vector<double> test;
  std::vector<double> oos;
  McSummary train_summary;
  McSummary test_summary;
  McSummary oos_summary;
};

/// Replication r uses SeededStream(seed, r): one joint (train, test) draw,
/// then an independent fresh draw for the out-of-sample error. The fit is
/// ŷ = H y_train throughout.
MonteCarloErrors monte_carlo_errors(const DesignMatrix& design, const Eigen::VectorXd& beta,
                                    const PairedCross& covariance, const LinearSmoother& smoother,
                                    std::size_t reps, std::uint64_t seed, unsigned threads = 1);

/// `rep,train_mse,test_mse,oos_mse` with 17 significant digits.
void write_csv(std::ostream& out, const MonteCarloErrors& errors);

}  // namespace optcv
