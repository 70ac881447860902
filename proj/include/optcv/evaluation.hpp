#pragma once

#include <cstdint>
#include <memory>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "optcv/designs.hpp"
#include "optcv/monte_carlo.hpp"
#include "optcv/splitters.hpp"

namespace optcv {

/// OLS on the design columns, or symmetric k-NN averaging along the row order.
struct Estimator {
  enum class Kind { Ols, Knn };
  Kind kind = Kind::Ols;
  int k = 2;

  static Estimator ols() { return {Kind::Ols, 0}; }
  static Estimator knn(int k) { return {Kind::Knn, k}; }
  std::string tag() const;
};

struct SplitErrors {
  double train_error = 0.0;
  double test_error = 0.0;
};

/// Fits on the training rows only and returns the training and test MSE.
///
/// OLS predicts test rows as X_test β̂. k-NN predicts each point from the
/// nearest k/2 training rows on each side in row order, using whatever
/// exists when one side runs out; training points exclude themselves.
SplitErrors evaluate_split(const DesignMatrix& design, const Eigen::VectorXd& y,
                           const SplitPlan& plan, const Estimator& estimator);

// Splitting schemes understood by compare_schemes.
struct KFoldScheme {
  std::size_t k = 5;
};
struct LeaveOneOutScheme {};
struct TemporalBlockScheme {
  double test_fraction = 0.2;
  std::size_t gap = 0;
};
struct NonDependentCvScheme {
  std::size_t k = 5;
  std::size_t gap = 1;
};
struct LeaveOneGroupOutScheme {};
struct NetworkScheme {
  double test_fraction = 0.2;
  bool buffer = true;
};
using Scheme = std::variant<KFoldScheme, LeaveOneOutScheme, TemporalBlockScheme, NonDependentCvScheme,
                            LeaveOneGroupOutScheme, NetworkScheme>;

std::string scheme_tag(const Scheme& scheme);

/// Builds the plans of `scheme` for n observations in time order; group and
/// network schemes read their labels / graph from `metadata`.
std::vector<SplitPlan> make_plans(const Scheme& scheme, std::size_t n,
                                  const DependencyMetadata& metadata, SeededStream& stream);

/// Stationary AR(1) series of length n. With OLS the regression is the lag-1
/// autoregression y_t ~ 1 + y_{t−1} on the n−1 available pairs; with k-NN the
/// series itself is smoothed along time. Groups are consecutive blocks of
/// `block_size` time points and the graph links time neighbours.
struct Ar1Dgp {
  double phi = 0.8;
  double sigma2 = 1.0;
  std::size_t n = 200;
  std::size_t block_size = 20;
};

/// Training and test copies stacked into one data set of 2n rows with design
/// [X; X] and joint covariance PairedCross(equicorrelated(σ², ρ), ρ): every
/// pair of observations has correlation ρ. Groups label the two copies and
/// the graph is complete.
struct PairedRegressionDgp {
  std::shared_ptr<const DesignMatrix> design;
  Eigen::VectorXd beta;
  double sigma2 = 1.0;
  double rho = 0.5;
};

using Dgp = std::variant<Ar1Dgp, PairedRegressionDgp>;

struct SchemeResult {
  std::string scheme;
  McSummary estimate;  ///< mean over replications of the per-plan mean test error
  McSummary bias;      ///< paired estimate − true error
};

struct SchemeComparison {
  std::vector<SchemeResult> schemes;
  McSummary true_oos;
  std::size_t reps = 0;
};

/// Replication r draws a data set and an independent fresh copy from
/// SeededStream(seed, r), then every scheme's plans from the same stream.
/// The true error is the MSE of the full-data fit on the fresh copy (for the
/// AR(1) lag regression this is the one-step-ahead forecast error).
SchemeComparison compare_schemes(const Dgp& dgp, const Estimator& estimator,
                                 const std::vector<Scheme>& schemes, std::size_t reps,
                                 std::uint64_t seed, unsigned threads = 1);

/// `scheme,mean_estimate,mc_se`, one row per scheme followed by `true_oos`.
void write_csv(std::ostream& out, const SchemeComparison& comparison);

enum class McNemarMode { ChiSquareCorrected, ExactBinomial };

struct McNemarResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// McNemar's test on the discordant counts b and c of a paired 2×2 table.
/// Corrected: (|b−c|−1)²/(b+c) against χ²(1). Exact: two-sided binomial test
/// of b successes in b+c trials at ½, reporting b as the statistic.
McNemarResult mcnemar_test(std::uint64_t b, std::uint64_t c,
                           McNemarMode mode = McNemarMode::ChiSquareCorrected);

/// Upper tail of χ² with one degree of freedom.
double chi_square1_survival(double x);

/// Error of a respondent mean split into data quality × quantity × difficulty:
///   mean(respondents) − mean(population) = ρ_{R,Y} · √((N−n)/n) · σ_Y
struct MengDecomposition {
  double data_quality = 0.0;   ///< ρ_{R,Y}; 0 and flagged undefined when n = N or σ_Y = 0
  double data_quantity = 0.0;  ///< √((N−n)/n)
  double difficulty = 0.0;     ///< population standard deviation (divisor N)
  double error = 0.0;
  bool quality_defined = true;
};

/// Throws DegenerateInput when nobody responded or the lengths differ.
MengDecomposition meng_decomposition(const std::vector<double>& population,
                                     const std::vector<bool>& responded);

}  // namespace optcv
