#include "optcv/covariance.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "optcv/error.hpp"

namespace optcv {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Validation fail(std::string reason) { return {false, std::move(reason)}; }

Validation check_sigma2(double sigma2) {
  if (!std::isfinite(sigma2) || !(sigma2 > 0.0)) {
    return fail("sigma2 must be finite and > 0, got " + std::to_string(sigma2));
  }
  return {};
}

// Strictly inside (−1/(m−1), 1): at the lower bound the matrix is singular.
Validation check_equicorrelation(double rho, std::size_t m, const char* what) {
  if (!std::isfinite(rho) || !(rho < 1.0)) {
    return fail(std::string(what) + " must be < 1, got " + std::to_string(rho));
  }
  if (m >= 2) {
    const double lower = -1.0 / static_cast<double>(m - 1);
    if (!(rho > lower)) {
      std::ostringstream msg;
      msg << what << " = " << rho << " violates the positive-definite bound rho > -1/(n-1) = "
          << lower << " for n = " << m;
      return fail(msg.str());
    }
  }
  return {};
}

Eigen::MatrixXd equicorrelated_block(double sigma2, double rho, std::size_t n) {
  const auto m = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd block = Eigen::MatrixXd::Constant(m, m, rho * sigma2);
  block.diagonal().setConstant(sigma2);
  return block;
}

Eigen::MatrixXd materialize_unchecked(const CovarianceSpec& spec) {
  return std::visit(
      overloaded{
          [](const Iid& s) -> Eigen::MatrixXd {
            const auto m = static_cast<Eigen::Index>(s.n);
            return s.sigma2 * Eigen::MatrixXd::Identity(m, m);
          },
          [](const Equicorrelated& s) -> Eigen::MatrixXd {
            return equicorrelated_block(s.sigma2, s.rho, s.n);
          },
          [](const Ar1& s) -> Eigen::MatrixXd {
            const auto m = static_cast<Eigen::Index>(s.n);
            Eigen::MatrixXd out(m, m);
            for (Eigen::Index i = 0; i < m; ++i) {
              for (Eigen::Index j = 0; j < m; ++j) {
                out(i, j) = ar1_autocovariance(s.phi, s.sigma2, i - j);
              }
            }
            return out;
          },
          [](const GroupBlock& s) -> Eigen::MatrixXd {
            const auto m = static_cast<Eigen::Index>(s.groups.size());
            Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m, m);
            for (Eigen::Index i = 0; i < m; ++i) {
              for (Eigen::Index j = 0; j < m; ++j) {
                if (i == j) {
                  out(i, j) = s.sigma2;
                } else if (s.groups[i] == s.groups[j]) {
                  out(i, j) = s.rho_within * s.sigma2;
                }
              }
            }
            return out;
          },
          [](const PairedCross& s) -> Eigen::MatrixXd {
            const auto m = static_cast<Eigen::Index>(s.inner.n);
            const Eigen::MatrixXd inner = equicorrelated_block(s.inner.sigma2, s.inner.rho, s.inner.n);
            Eigen::MatrixXd out(2 * m, 2 * m);
            out.topLeftCorner(m, m) = inner;
            out.bottomRightCorner(m, m) = inner;
            out.topRightCorner(m, m).setConstant(s.cross_rho * s.inner.sigma2);
            out.bottomLeftCorner(m, m).setConstant(s.cross_rho * s.inner.sigma2);
            return out;
          },
      },
      spec);
}

}  // namespace

double ar1_autocovariance(double phi, double sigma2, long long lag) {
  if (!std::isfinite(phi) || !(std::abs(phi) < 1.0)) {
    throw InvalidSpec("AR(1) requires |phi| < 1 for stationarity, got phi = " +
                      std::to_string(phi));
  }
  if (!std::isfinite(sigma2) || !(sigma2 > 0.0)) {
    throw InvalidSpec("AR(1) requires sigma2 > 0");
  }
  const auto h = static_cast<double>(lag < 0 ? -lag : lag);
  return sigma2 * std::pow(phi, h) / (1.0 - phi * phi);
}

Validation validate(const CovarianceSpec& spec) {
  return std::visit(
      overloaded{
          [](const Iid& s) -> Validation {
            if (s.n < 1) return fail("n must be >= 1");
            return check_sigma2(s.sigma2);
          },
          [](const Equicorrelated& s) -> Validation {
            if (s.n < 1) return fail("n must be >= 1");
            if (auto v = check_sigma2(s.sigma2); !v) return v;
            return check_equicorrelation(s.rho, s.n, "rho");
          },
          [](const Ar1& s) -> Validation {
            if (s.n < 1) return fail("n must be >= 1");
            if (auto v = check_sigma2(s.sigma2); !v) return v;
            if (!std::isfinite(s.phi) || !(std::abs(s.phi) < 1.0)) {
              return fail("AR(1) requires |phi| < 1 for stationarity, got phi = " +
                          std::to_string(s.phi));
            }
            return {};
          },
          [](const GroupBlock& s) -> Validation {
            if (s.groups.empty()) return fail("group labels must be non-empty");
            if (auto v = check_sigma2(s.sigma2); !v) return v;
            std::map<std::string, std::size_t> sizes;
            for (const auto& g : s.groups) ++sizes[g];
            std::size_t largest = 0;
            for (const auto& [label, count] : sizes) largest = std::max(largest, count);
            return check_equicorrelation(s.rho_within, largest, "rho_within");
          },
          [](const PairedCross& s) -> Validation {
            if (auto v = validate(CovarianceSpec{s.inner}); !v) return v;
            if (!std::isfinite(s.cross_rho)) return fail("cross_rho must be finite");
            // No closed-form bound for general cross_rho: try the factorisation.
            Eigen::LLT<Eigen::MatrixXd> llt(materialize_unchecked(s));
            if (llt.info() != Eigen::Success) {
              return fail("paired covariance with rho = " + std::to_string(s.inner.rho) +
                          ", cross_rho = " + std::to_string(s.cross_rho) +
                          " is not positive definite");
            }
            return {};
          },
      },
      spec);
}

Eigen::MatrixXd materialize(const CovarianceSpec& spec) {
  if (auto v = validate(spec); !v) throw InvalidSpec(v.reason);
  return materialize_unchecked(spec);
}

std::size_t dimension(const CovarianceSpec& spec) {
  return std::visit(overloaded{
                        [](const Iid& s) { return s.n; },
                        [](const Equicorrelated& s) { return s.n; },
                        [](const Ar1& s) { return s.n; },
                        [](const GroupBlock& s) { return s.groups.size(); },
                        [](const PairedCross& s) { return 2 * s.inner.n; },
                    },
                    spec);
}

std::string describe(const CovarianceSpec& spec) {
  std::ostringstream out;
  std::visit(overloaded{
                 [&](const Iid& s) { out << "iid(sigma2=" << s.sigma2 << ", n=" << s.n << ")"; },
                 [&](const Equicorrelated& s) {
                   out << "equicorrelated(sigma2=" << s.sigma2 << ", rho=" << s.rho
                       << ", n=" << s.n << ")";
                 },
                 [&](const Ar1& s) {
                   out << "ar1(sigma2=" << s.sigma2 << ", phi=" << s.phi << ", n=" << s.n << ")";
                 },
                 [&](const GroupBlock& s) {
                   out << "group_block(sigma2=" << s.sigma2 << ", rho_within=" << s.rho_within
                       << ", n=" << s.groups.size() << ")";
                 },
                 [&](const PairedCross& s) {
                   out << "paired_cross(sigma2=" << s.inner.sigma2 << ", rho=" << s.inner.rho
                       << ", cross_rho=" << s.cross_rho << ", n=" << s.inner.n << ")";
                 },
             },
             spec);
  return out.str();
}

}  // namespace optcv
