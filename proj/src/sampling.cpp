#include "optcv/sampling.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "optcv/error.hpp"

namespace optcv {
namespace {

std::seed_seq make_seed_seq(std::uint64_t seed, std::uint64_t stream_id) {
  return std::seed_seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                       static_cast<std::uint32_t>(stream_id),
                       static_cast<std::uint32_t>(stream_id >> 32)};
}

}  // namespace

SeededStream::SeededStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  auto seq = make_seed_seq(seed, stream_id);
  engine_.seed(seq);
}

double SeededStream::uniform() {
  constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
  return (static_cast<double>(engine_() >> 11) + 0.5) * kScale;
}

std::uint64_t SeededStream::below(std::uint64_t bound) {
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return x % bound;
}

double SeededStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Eigen::VectorXd SeededStream::normals(Eigen::Index n) {
  Eigen::VectorXd z(n);
  for (Eigen::Index i = 0; i < n; ++i) z(i) = normal();
  return z;
}

MvnSampler::MvnSampler(const Eigen::MatrixXd& covariance) {
  if (covariance.rows() != covariance.cols()) {
    throw DimensionError("covariance must be square");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(covariance);
  if (llt.info() != Eigen::Success || !llt.matrixL().toDenseMatrix().allFinite()) {
    throw NotPositiveDefinite("covariance is not positive definite (Cholesky failed)");
  }
  lower_ = llt.matrixL();
}

Eigen::VectorXd MvnSampler::draw(const Eigen::VectorXd& mean, SeededStream& stream) const {
  if (mean.size() != lower_.rows()) {
    throw DimensionError("mean length " + std::to_string(mean.size()) +
                         " does not match covariance size " + std::to_string(lower_.rows()));
  }
  const Eigen::VectorXd z = stream.normals(lower_.rows());
  return mean + lower_.triangularView<Eigen::Lower>() * z;
}

Eigen::VectorXd sample_mvn(const Eigen::VectorXd& mean, const Eigen::MatrixXd& covariance,
                           SeededStream& stream) {
  return MvnSampler(covariance).draw(mean, stream);
}

PairedSampler::PairedSampler(std::shared_ptr<const DesignMatrix> design,
                             const Eigen::VectorXd& beta, const PairedCross& covariance)
    : design_(std::move(design)),
      covariance_(covariance),
      joint_(materialize(covariance)),
      marginal_(materialize(covariance.inner)) {
  if (beta.size() != design_->cols()) {
    throw DimensionError("beta length " + std::to_string(beta.size()) +
                         " does not match design columns " + std::to_string(design_->cols()));
  }
  if (static_cast<Eigen::Index>(covariance.inner.n) != design_->rows()) {
    throw DimensionError("covariance size does not match design rows");
  }
  mean_ = design_->values() * beta;
}

PairedDraw PairedSampler::draw(SeededStream& stream) const {
  const Eigen::Index n = mean_.size();
  Eigen::VectorXd stacked(2 * n);
  stacked << mean_, mean_;
  const Eigen::VectorXd joint = joint_.draw(stacked, stream);
  return PairedDraw{joint.head(n), joint.tail(n), design_};
}

Eigen::VectorXd PairedSampler::draw_fresh(SeededStream& stream) const {
  return marginal_.draw(mean_, stream);
}

PairedDraw sample_paired(const DesignMatrix& design, const Eigen::VectorXd& beta, double sigma2,
                         double rho, SeededStream& stream) {
  const auto n = static_cast<std::size_t>(design.rows());
  const PairedCross cov{Equicorrelated{sigma2, rho, n}, rho};
  const PairedSampler sampler(std::make_shared<const DesignMatrix>(design), beta, cov);
  return sampler.draw(stream);
}

Eigen::VectorXd sample_ar1(std::size_t n, double phi, double sigma2, SeededStream& stream) {
  if (auto v = validate(Ar1{sigma2, phi, n}); !v) throw InvalidSpec(v.reason);
  const double sd = std::sqrt(sigma2);
  Eigen::VectorXd path(static_cast<Eigen::Index>(n));
  path(0) = stream.normal() * sd / std::sqrt(1.0 - phi * phi);
  for (Eigen::Index t = 1; t < path.size(); ++t) {
    path(t) = phi * path(t - 1) + sd * stream.normal();
  }
  return path;
}

}  // namespace optcv
