#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace optcv {

/// σ² I.
struct Iid {
  double sigma2 = 1.0;
  std::size_t n = 0;
};

/// Common variance σ² and common pairwise correlation ρ.
struct Equicorrelated {
  double sigma2 = 1.0;
  double rho = 0.0;
  std::size_t n = 0;
};

/// Stationary AR(1) autocovariance γ(h) = σ² φ^|h| / (1 − φ²); σ² is the
/// innovation variance.
struct Ar1 {
  double sigma2 = 1.0;
  double phi = 0.0;
  std::size_t n = 0;
};

/// Equicorrelation within groups sharing a label, independence across groups.
struct GroupBlock {
  double sigma2 = 1.0;
  double rho_within = 0.0;
  std::vector<std::string> groups;
};

/// Joint covariance of a training and a test copy drawn at the same X:
/// [[Σ, ρ_c σ² 11ᵀ], [ρ_c σ² 11ᵀ, Σ]] with Σ the inner equicorrelated block.
struct PairedCross {
  Equicorrelated inner;
  double cross_rho = 0.0;
};

using CovarianceSpec = std::variant<Iid, Equicorrelated, Ar1, GroupBlock, PairedCross>;

/// Outcome of `validate`; `reason` names the violated bound when not ok.
struct Validation {
  bool ok = true;
  std::string reason;

  explicit operator bool() const { return ok; }
};

Validation validate(const CovarianceSpec& spec);

/// Dense symmetric matrix for `spec`. Throws InvalidSpec when `validate` fails.
Eigen::MatrixXd materialize(const CovarianceSpec& spec);

/// Dimension of the materialised matrix.
std::size_t dimension(const CovarianceSpec& spec);

/// σ² φ^|h| / (1 − φ²). Throws InvalidSpec for |φ| ≥ 1 or σ² ≤ 0.
double ar1_autocovariance(double phi, double sigma2, long long lag);

/// Short human-readable description, e.g. "equicorrelated(sigma2=1, rho=0.5, n=100)".
std::string describe(const CovarianceSpec& spec);

}  // namespace optcv
