#pragma once

#include <cstdint>
#include <memory>
#include <random>

#include <Eigen/Dense>

#include "optcv/covariance.hpp"
#include "optcv/designs.hpp"

namespace optcv {

/// Seed used when neither `--seed` nor OPTCV_SEED is given.
inline constexpr std::uint64_t kDefaultSeed = 20200417;

/// Reproducible random stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard, seeded through std::seed_seq (also fully specified) from the
/// 32-bit halves of (seed, stream_id). Uniforms, bounded integers and normals
/// are derived here rather than through the implementation-defined standard
/// distributions, so a (seed, stream_id) pair yields the same sequence on
/// every conforming platform.
class SeededStream {
 public:
  SeededStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound);
  /// Standard normal by the Box–Muller transform; values come in pairs.
  double normal();
  Eigen::VectorXd normals(Eigen::Index n);

  /// Fisher–Yates shuffle driven by `below`.
  template <class RandomIt>
  void shuffle(RandomIt first, RandomIt last) {
    const auto n = static_cast<std::uint64_t>(last - first);
    for (std::uint64_t i = n; i > 1; --i) {
      const auto j = below(i);
      std::iter_swap(first + static_cast<std::ptrdiff_t>(i - 1),
                     first + static_cast<std::ptrdiff_t>(j));
    }
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Multivariate normal sampler holding the lower Cholesky factor of Σ.
class MvnSampler {
 public:
  /// Throws NotPositiveDefinite when the factorisation fails.
  explicit MvnSampler(const Eigen::MatrixXd& covariance);

  Eigen::Index dimension() const { return lower_.rows(); }
  Eigen::VectorXd draw(const Eigen::VectorXd& mean, SeededStream& stream) const;

 private:
  Eigen::MatrixXd lower_;
};

/// mean + L z with L the lower Cholesky factor of Σ.
Eigen::VectorXd sample_mvn(const Eigen::VectorXd& mean, const Eigen::MatrixXd& covariance,
                           SeededStream& stream);

/// One joint draw of the training and test responses at a shared design.
struct PairedDraw {
  Eigen::VectorXd y_train;
  Eigen::VectorXd y_test;
  std::shared_ptr<const DesignMatrix> design;
};

/// Draws (Y₁, Y₂) ~ N((Xβ, Xβ), [[Σ, ρσ²11ᵀ], [ρσ²11ᵀ, Σ]]) with Σ
/// equicorrelated(σ², ρ), and independent fresh copies Y* ~ N(Xβ, Σ).
class PairedSampler {
 public:
  PairedSampler(std::shared_ptr<const DesignMatrix> design, const Eigen::VectorXd& beta,
                const PairedCross& covariance);

  const DesignMatrix& design() const { return *design_; }
  const Eigen::VectorXd& mean() const { return mean_; }
  const PairedCross& covariance() const { return covariance_; }

  PairedDraw draw(SeededStream& stream) const;
  /// Marginal draw from N(Xβ, Σ), independent of any paired draw.
  Eigen::VectorXd draw_fresh(SeededStream& stream) const;

 private:
  std::shared_ptr<const DesignMatrix> design_;
  Eigen::VectorXd mean_;
  PairedCross covariance_;
  MvnSampler joint_;
  MvnSampler marginal_;
};

PairedDraw sample_paired(const DesignMatrix& design, const Eigen::VectorXd& beta, double sigma2,
                         double rho, SeededStream& stream);

/// Stationary AR(1) path: Y₀ ~ N(0, σ²/(1−φ²)), Y_t = φ Y_{t−1} + ε_t.
Eigen::VectorXd sample_ar1(std::size_t n, double phi, double sigma2, SeededStream& stream);

}  // namespace optcv
