#include "optcv/evaluation.hpp"

#include <algorithm>
#include <iomanip>
#include <string>

#include "optcv/error.hpp"
#include "optcv/sampling.hpp"

namespace optcv {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// OLS restricted to subsets of rows of a fixed data set. The full Gram matrix
// is formed once; a subset fit subtracts the excluded rows when they are the
// minority, so leave-one-out costs O(p²) per plan instead of O(np²).
class SubsetOls {
 public:
  SubsetOls(const Eigen::MatrixXd& x, const Eigen::VectorXd& y)
      : x_(x), y_(y), gram_(x.transpose() * x), xty_(x.transpose() * y) {}

  Eigen::VectorXd fit(const IndexSet& train) const {
    const Eigen::Index n = x_.rows();
    const Eigen::Index p = x_.cols();
    if (static_cast<Eigen::Index>(train.size()) < p) {
      throw SingularDesign("training set has " + std::to_string(train.size()) +
                           " rows for " + std::to_string(p) + " coefficients");
    }
    Eigen::MatrixXd gram;
    Eigen::VectorXd xty;
    if (2 * static_cast<Eigen::Index>(train.size()) >= n) {
      std::vector<unsigned char> keep(static_cast<std::size_t>(n), 0);
      for (std::size_t i : train) keep[i] = 1;
      gram = gram_;
      xty = xty_;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (keep[static_cast<std::size_t>(i)]) continue;
        gram.noalias() -= x_.row(i).transpose() * x_.row(i);
        xty.noalias() -= x_.row(i).transpose() * y_(i);
      }
    } else {
      gram = Eigen::MatrixXd::Zero(p, p);
      xty = Eigen::VectorXd::Zero(p);
      for (std::size_t i : train) {
        const auto r = static_cast<Eigen::Index>(i);
        gram.noalias() += x_.row(r).transpose() * x_.row(r);
        xty.noalias() += x_.row(r).transpose() * y_(r);
      }
    }
    Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
    const double rcond = ldlt.info() == Eigen::Success ? ldlt.rcond() : 0.0;
    if (!(rcond >= kSingularRcond) || !ldlt.isPositive()) {
      throw SingularDesign("training design is numerically singular (rcond=" +
                           std::to_string(rcond) + ")");
    }
    return ldlt.solve(xty);
  }

  double mse(const IndexSet& rows, const Eigen::VectorXd& beta) const {
    double sum = 0.0;
    for (std::size_t i : rows) {
      const auto r = static_cast<Eigen::Index>(i);
      const double e = y_(r) - x_.row(r).dot(beta);
      sum += e * e;
    }
    return sum / static_cast<double>(rows.size());
  }

 private:
  const Eigen::MatrixXd& x_;
  const Eigen::VectorXd& y_;
  Eigen::MatrixXd gram_;
  Eigen::VectorXd xty_;
};

// Mean of the nearest k/2 training rows on each side of `target`, skipping
// `target` itself. `train` is sorted.
double knn_predict(const IndexSet& train, const Eigen::VectorXd& y, std::size_t target, int k) {
  const auto half = static_cast<std::size_t>(k / 2);
  auto split = std::lower_bound(train.begin(), train.end(), target);
  auto right = split;
  if (right != train.end() && *right == target) ++right;

  double sum = 0.0;
  std::size_t used = 0;
  auto left = split;
  for (std::size_t taken = 0; taken < half && left != train.begin(); ++taken) {
    --left;
    sum += y(static_cast<Eigen::Index>(*left));
    ++used;
  }
  for (std::size_t taken = 0; taken < half && right != train.end(); ++taken, ++right) {
    sum += y(static_cast<Eigen::Index>(*right));
    ++used;
  }
  if (used == 0) {
    throw DegenerateInput("point " + std::to_string(target) + " has no training neighbour");
  }
  return sum / static_cast<double>(used);
}

double knn_mse(const IndexSet& train, const IndexSet& rows, const Eigen::VectorXd& y, int k) {
  double sum = 0.0;
  for (std::size_t i : rows) {
    const double e = y(static_cast<Eigen::Index>(i)) - knn_predict(train, y, i, k);
    sum += e * e;
  }
  return sum / static_cast<double>(rows.size());
}

void check_plan(const SplitPlan& plan, Eigen::Index rows) {
  if (static_cast<Eigen::Index>(plan.n()) != rows) {
    throw DimensionError("split plan covers " + std::to_string(plan.n()) +
                         " observations, data has " + std::to_string(rows));
  }
}

void check_estimator(const Estimator& estimator) {
  if (estimator.kind == Estimator::Kind::Knn && (estimator.k < 2 || estimator.k % 2 != 0)) {
    throw DimensionError("k-NN estimator needs a positive even k");
  }
}

// One realisation of a data set in row (time) order.
struct Sample {
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
};

Sample lag_regression(const Eigen::VectorXd& series) {
  const Eigen::Index m = series.size() - 1;
  Sample s;
  s.x.resize(m, 2);
  s.x.col(0).setOnes();
  s.x.col(1) = series.head(m);
  s.y = series.tail(m);
  return s;
}

class DataSource {
 public:
  DataSource(const Dgp& dgp, const Estimator& estimator) : dgp_(dgp), estimator_(estimator) {
    std::visit(overloaded{
                   [&](const Ar1Dgp& d) {
                     if (auto v = validate(Ar1{d.sigma2, d.phi, d.n}); !v) throw InvalidSpec(v.reason);
                     if (d.n < 4) throw DimensionError("AR(1) comparison needs n >= 4");
                     if (d.block_size < 1) throw DimensionError("block_size must be >= 1");
                     rows_ = estimator.kind == Estimator::Kind::Ols ? d.n - 1 : d.n;
                     std::vector<std::string> groups(rows_);
                     for (std::size_t i = 0; i < rows_; ++i) {
                       groups[i] = "block" + std::to_string(i / d.block_size);
                     }
                     metadata_.groups = std::move(groups);
                     metadata_.adjacency = Adjacency::path(rows_);
                   },
                   [&](const PairedRegressionDgp& d) {
                     if (!d.design) throw DimensionError("paired DGP needs a design");
                     const auto n = static_cast<std::size_t>(d.design->rows());
                     paired_ = std::make_unique<PairedSampler>(
                         d.design, d.beta, PairedCross{Equicorrelated{d.sigma2, d.rho, n}, d.rho});
                     rows_ = 2 * n;
                     stacked_x_.resize(2 * d.design->rows(), d.design->cols());
                     stacked_x_ << d.design->values(), d.design->values();
                     std::vector<std::string> groups(rows_, "draw1");
                     std::fill(groups.begin() + static_cast<std::ptrdiff_t>(n), groups.end(), "draw2");
                     metadata_.groups = std::move(groups);
                     metadata_.adjacency = Adjacency::complete(rows_);
                   },
               },
               dgp_);
    if (estimator_.kind == Estimator::Kind::Knn) {
      full_knn_ = knn_smoother(rows_, estimator_.k).matrix();
    }
  }

  std::size_t rows() const { return rows_; }
  const DependencyMetadata& metadata() const { return metadata_; }

  Sample draw(SeededStream& stream) const {
    return std::visit(overloaded{
                          [&](const Ar1Dgp& d) {
                            const Eigen::VectorXd series = sample_ar1(d.n, d.phi, d.sigma2, stream);
                            if (estimator_.kind == Estimator::Kind::Ols) return lag_regression(series);
                            return Sample{Eigen::MatrixXd::Ones(series.size(), 1), series};
                          },
                          [&](const PairedRegressionDgp&) {
                            const PairedDraw draw = paired_->draw(stream);
                            Sample s;
                            s.x = stacked_x_;
                            s.y.resize(static_cast<Eigen::Index>(rows_));
                            s.y << draw.y_train, draw.y_test;
                            return s;
                          },
                      },
                      dgp_);
  }

  // MSE of the full-data fit on an independent fresh sample.
  double true_error(const Sample& data, const Sample& fresh) const {
    if (estimator_.kind == Estimator::Kind::Knn) {
      return (fresh.y - full_knn_ * data.y).squaredNorm() / static_cast<double>(rows_);
    }
    IndexSet all(rows_);
    for (std::size_t i = 0; i < rows_; ++i) all[i] = i;
    const Eigen::VectorXd beta = SubsetOls(data.x, data.y).fit(all);
    return (fresh.y - fresh.x * beta).squaredNorm() / static_cast<double>(rows_);
  }

 private:
  const Dgp& dgp_;
  Estimator estimator_;
  std::size_t rows_ = 0;
  DependencyMetadata metadata_;
  std::unique_ptr<PairedSampler> paired_;
  Eigen::MatrixXd stacked_x_;
  Eigen::MatrixXd full_knn_;
};

double mean_test_error(const Sample& data, const std::vector<SplitPlan>& plans,
                       const Estimator& estimator) {
  double total = 0.0;
  if (estimator.kind == Estimator::Kind::Ols) {
    const SubsetOls ols(data.x, data.y);
    for (const auto& plan : plans) total += ols.mse(plan.test(), ols.fit(plan.train()));
  } else {
    for (const auto& plan : plans) total += knn_mse(plan.train(), plan.test(), data.y, estimator.k);
  }
  return total / static_cast<double>(plans.size());
}

}  // namespace

std::string Estimator::tag() const {
  return kind == Kind::Ols ? std::string("ols") : "knn" + std::to_string(k);
}

SplitErrors evaluate_split(const DesignMatrix& design, const Eigen::VectorXd& y,
                           const SplitPlan& plan, const Estimator& estimator) {
  if (y.size() != design.rows()) {
    throw DimensionError("response length does not match design rows");
  }
  check_plan(plan, design.rows());
  check_estimator(estimator);
  if (estimator.kind == Estimator::Kind::Ols) {
    const SubsetOls ols(design.values(), y);
    const Eigen::VectorXd beta = ols.fit(plan.train());
    return {ols.mse(plan.train(), beta), ols.mse(plan.test(), beta)};
  }
  return {knn_mse(plan.train(), plan.train(), y, estimator.k),
          knn_mse(plan.train(), plan.test(), y, estimator.k)};
}

std::string scheme_tag(const Scheme& scheme) {
  return std::visit(
      overloaded{
          [](const KFoldScheme& s) { return "kfold" + std::to_string(s.k); },
          [](const LeaveOneOutScheme&) { return std::string("loo"); },
          [](const TemporalBlockScheme& s) {
            return s.gap == 0 ? std::string("temporal_block")
                              : "temporal_block_gap" + std::to_string(s.gap);
          },
          [](const NonDependentCvScheme& s) { return "non_dependent_cv_h" + std::to_string(s.gap); },
          [](const LeaveOneGroupOutScheme&) { return std::string("leave_one_group_out"); },
          [](const NetworkScheme& s) {
            return std::string(s.buffer ? "network_buffered" : "network_holdout");
          },
      },
      scheme);
}

std::vector<SplitPlan> make_plans(const Scheme& scheme, std::size_t n,
                                  const DependencyMetadata& metadata, SeededStream& stream) {
  return std::visit(
      overloaded{
          [&](const KFoldScheme& s) { return kfold(n, s.k, stream); },
          [&](const LeaveOneOutScheme&) { return leave_one_out(n); },
          [&](const TemporalBlockScheme& s) {
            return std::vector<SplitPlan>{temporal_block(n, s.test_fraction, s.gap)};
          },
          [&](const NonDependentCvScheme& s) { return non_dependent_cv(n, s.k, s.gap); },
          [&](const LeaveOneGroupOutScheme&) {
            if (!metadata.groups) throw DegenerateInput("leave-one-group-out needs group labels");
            if (metadata.groups->size() != n) throw DimensionError("group labels length must equal n");
            return leave_one_group_out(*metadata.groups);
          },
          [&](const NetworkScheme& s) {
            if (!metadata.adjacency) throw DegenerateInput("network split needs an adjacency matrix");
            if (metadata.adjacency->size() != n) throw DimensionError("adjacency size must equal n");
            return std::vector<SplitPlan>{
                network_neighborhood_split(*metadata.adjacency, s.test_fraction, s.buffer, stream)};
          },
      },
      scheme);
}

SchemeComparison compare_schemes(const Dgp& dgp, const Estimator& estimator,
                                 const std::vector<Scheme>& schemes, std::size_t reps,
                                 std::uint64_t seed, unsigned threads) {
  if (reps < 1) throw DimensionError("reps must be >= 1");
  if (schemes.empty()) throw DimensionError("at least one scheme is required");
  check_estimator(estimator);
  const DataSource source(dgp, estimator);
  const std::size_t width = schemes.size();

  std::vector<double> truth(reps);
  std::vector<double> estimates(reps * width);
  parallel_for(reps, threads, [&](std::size_t r) {
    SeededStream stream(seed, r);
    const Sample data = source.draw(stream);
    const Sample fresh = source.draw(stream);
    truth[r] = source.true_error(data, fresh);
    for (std::size_t s = 0; s < width; ++s) {
      const auto plans = make_plans(schemes[s], source.rows(), source.metadata(), stream);
      estimates[r * width + s] = mean_test_error(data, plans, estimator);
    }
  });

  SchemeComparison out;
  out.reps = reps;
  out.true_oos = summarize(truth);
  std::vector<double> column(reps);
  std::vector<double> diff(reps);
  for (std::size_t s = 0; s < width; ++s) {
    for (std::size_t r = 0; r < reps; ++r) {
      column[r] = estimates[r * width + s];
      diff[r] = column[r] - truth[r];
    }
    out.schemes.push_back({scheme_tag(schemes[s]), summarize(column), summarize(diff)});
  }
  return out;
}

void write_csv(std::ostream& out, const SchemeComparison& comparison) {
  out << "scheme,mean_estimate,mc_se\n" << std::setprecision(17);
  for (const auto& s : comparison.schemes) {
    out << s.scheme << ',' << s.estimate.mean << ',' << s.estimate.se << '\n';
  }
  out << "true_oos," << comparison.true_oos.mean << ',' << comparison.true_oos.se << '\n';
}

}  // namespace optcv
