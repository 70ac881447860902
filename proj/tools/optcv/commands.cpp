#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <numeric>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "optcv/covariance.hpp"
#include "optcv/designs.hpp"
#include "optcv/error.hpp"
#include "optcv/evaluation.hpp"
#include "optcv/optimism.hpp"
#include "optcv/sampling.hpp"
#include "optcv/smoothers.hpp"
#include "optcv/splitters.hpp"
#include "svg.hpp"

namespace optcv::cli {
namespace {

// Library errors raised while checking a configuration are configuration errors.
template <class F>
auto checked(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const optcv::Error& e) {
    throw ConfigError(e.what());
  }
}

std::string fmt(double v, int precision = 17) {
  std::ostringstream out;
  out << std::setprecision(precision) << v;
  return out.str();
}

struct PairedSetup {
  std::shared_ptr<const DesignMatrix> design;
  Eigen::VectorXd beta;
  PairedCross covariance;
};

PairedSetup paired_setup(const ExperimentConfig& c) {
  if (c.dgp != "paired") {
    throw ConfigError("this command needs the paired equicorrelated DGP (dgp=paired), got dgp=" + c.dgp);
  }
  return checked([&] {
    const auto points = equally_spaced_points(c.n, 1.0 / static_cast<double>(c.n));
    PairedSetup s;
    s.design = std::make_shared<const DesignMatrix>(orthogonal_polynomial_features(points, c.degree));
    s.beta = Eigen::VectorXd::Constant(c.degree + 1, c.beta);
    s.covariance = PairedCross{Equicorrelated{c.sigma2, c.rho, c.n}, c.rho};
    if (auto v = validate(CovarianceSpec{s.covariance}); !v) throw InvalidSpec(v.reason);
    return s;
  });
}

ErrorDecomposition paired_matrix_route(const PairedSetup& s, const LinearSmoother& hat) {
  const Eigen::Index n = s.design->rows();
  const Eigen::MatrixXd sigma = materialize(s.covariance.inner);
  const Eigen::MatrixXd cross =
      Eigen::MatrixXd::Constant(n, n, s.covariance.cross_rho * s.covariance.inner.sigma2);
  return analytic_decomposition(s.design->values() * s.beta, hat, sigma, cross);
}

std::string describe_config(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "preset: " << (c.preset.empty() ? "(none)" : c.preset) << '\n'
      << "seed: " << c.seed << '\n'
      << "reps: " << c.reps << '\n';
  if (c.dgp == "paired") {
    out << "dgp: paired equicorrelated, n=" << c.n << " degree=" << c.degree << " beta=" << c.beta
        << " rho=" << c.rho << " sigma2=" << c.sigma2 << '\n';
  } else {
    out << "dgp: ar1, n=" << c.n << " phi=" << c.phi << " sigma2=" << c.sigma2 << '\n';
  }
  return out.str();
}

void add_decomposition_rows(std::ostringstream& out, const ErrorDecomposition* closed,
                            const ErrorDecomposition& matrix) {
  auto row = [&](const char* name, double ErrorDecomposition::*field) {
    out << name << ',' << (closed ? fmt(closed->*field) : std::string("NA")) << ','
        << fmt(matrix.*field) << '\n';
  };
  row("irreducible", &ErrorDecomposition::irreducible);
  row("squared_bias", &ErrorDecomposition::squared_bias);
  row("estimator_variance", &ErrorDecomposition::estimator_variance);
  row("optimism_train", &ErrorDecomposition::optimism_train);
  row("optimism_test", &ErrorDecomposition::optimism_test);
  row("expected_train", &ErrorDecomposition::expected_train);
  row("expected_test", &ErrorDecomposition::expected_test);
  row("expected_oos", &ErrorDecomposition::expected_oos);
}

Estimator estimator_of(const ExperimentConfig& c) {
  if (c.estimator == "knn") {
    if (c.knn_k < 2 || c.knn_k % 2 != 0) throw ConfigError("knn estimator needs an even k >= 2");
    return Estimator::knn(c.knn_k);
  }
  return Estimator::ols();
}

std::size_t arg_size(const Term& t, const char* key, std::size_t fallback) {
  auto it = t.args.find(key);
  if (it == t.args.end()) return fallback;
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(it->second.data(), it->second.data() + it->second.size(), v);
  if (ec != std::errc() || p != it->second.data() + it->second.size()) {
    throw ConfigError("invalid " + std::string(key) + " for scheme " + t.name);
  }
  return v;
}

double arg_double(const Term& t, const char* key, double fallback) {
  auto it = t.args.find(key);
  if (it == t.args.end()) return fallback;
  double v = 0.0;
  auto [p, ec] = std::from_chars(it->second.data(), it->second.data() + it->second.size(), v);
  if (ec != std::errc() || p != it->second.data() + it->second.size()) {
    throw ConfigError("invalid " + std::string(key) + " for scheme " + t.name);
  }
  return v;
}

bool arg_bool(const Term& t, const char* key, bool fallback) {
  auto it = t.args.find(key);
  if (it == t.args.end()) return fallback;
  if (it->second == "true" || it->second == "1") return true;
  if (it->second == "false" || it->second == "0") return false;
  throw ConfigError("invalid " + std::string(key) + " for scheme " + t.name);
}

void allow_args(const Term& t, std::set<std::string> allowed) {
  for (const auto& [key, value] : t.args) {
    if (!allowed.count(key)) throw ConfigError("unknown argument '" + key + "' for scheme " + t.name);
  }
}

Scheme to_scheme(const Term& t, const ExperimentConfig& c) {
  if (t.name == "kfold") {
    allow_args(t, {"k"});
    return KFoldScheme{arg_size(t, "k", c.k)};
  }
  if (t.name == "loo") {
    allow_args(t, {});
    return LeaveOneOutScheme{};
  }
  if (t.name == "temporal_block") {
    allow_args(t, {"test_fraction", "gap"});
    return TemporalBlockScheme{arg_double(t, "test_fraction", c.test_fraction), arg_size(t, "gap", c.gap)};
  }
  if (t.name == "non_dependent_cv") {
    allow_args(t, {"k", "gap"});
    return NonDependentCvScheme{arg_size(t, "k", c.k), arg_size(t, "gap", c.gap)};
  }
  if (t.name == "leave_one_group_out") {
    allow_args(t, {});
    return LeaveOneGroupOutScheme{};
  }
  if (t.name == "network") {
    allow_args(t, {"test_fraction", "buffer"});
    return NetworkScheme{arg_double(t, "test_fraction", c.test_fraction), arg_bool(t, "buffer", c.buffer)};
  }
  throw ConfigError("unknown scheme '" + t.name +
                    "' (expected kfold, loo, temporal_block, non_dependent_cv, "
                    "leave_one_group_out or network)");
}

// ---------------------------------------------------------------------------
// split input

struct SplitData {
  std::size_t n = 0;
  std::vector<std::size_t> ordering;  // ordering[pos] = row
  std::vector<std::string> groups;    // by row
  std::optional<Adjacency> adjacency;
};

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream in(line);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    if (!cell.empty() && cell.back() == '\r') cell.pop_back();
    cells.push_back(cell);
  }
  return cells;
}

SplitData read_split_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read input file '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("input file '" + path + "' is empty");
  const auto header = split_csv_line(line);
  std::optional<std::size_t> time_col;
  std::optional<std::size_t> group_col;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "time") time_col = i;
    if (header[i] == "group") group_col = i;
  }
  std::vector<double> times;
  SplitData data;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      throw ConfigError("row " + std::to_string(data.n + 1) + " of '" + path + "' has " +
                        std::to_string(cells.size()) + " cells, header has " +
                        std::to_string(header.size()));
    }
    if (time_col) {
      double t = 0.0;
      const auto& cell = cells[*time_col];
      auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), t);
      if (ec != std::errc() || p != cell.data() + cell.size()) {
        throw ConfigError("non-numeric time '" + cell + "' in '" + path + "'");
      }
      times.push_back(t);
    }
    if (group_col) data.groups.push_back(cells[*group_col]);
    ++data.n;
  }
  data.ordering.resize(data.n);
  std::iota(data.ordering.begin(), data.ordering.end(), std::size_t{0});
  if (time_col) {
    std::stable_sort(data.ordering.begin(), data.ordering.end(),
                     [&](std::size_t a, std::size_t b) { return times[a] < times[b]; });
  }
  return data;
}

// Planted-partition graph: nodes in the same community link with p_in,
// others with p_out.
SplitData synthetic_split_data(const ExperimentConfig& c) {
  SplitData data;
  data.n = c.n;
  data.ordering.resize(c.n);
  std::iota(data.ordering.begin(), data.ordering.end(), std::size_t{0});
  if (c.communities < 1 || c.communities > c.n) {
    throw ConfigError("communities must lie in [1, n]");
  }
  if (!(c.p_in >= 0.0 && c.p_in <= 1.0 && c.p_out >= 0.0 && c.p_out <= 1.0)) {
    throw ConfigError("p_in and p_out must lie in [0, 1]");
  }
  std::vector<std::size_t> community(c.n);
  for (std::size_t i = 0; i < c.n; ++i) {
    community[i] = i * c.communities / c.n;
    data.groups.push_back("c" + std::to_string(community[i]));
  }
  SeededStream graph_stream(c.seed, 1);
  Adjacency adjacency(c.n);
  for (std::size_t i = 0; i < c.n; ++i) {
    for (std::size_t j = i + 1; j < c.n; ++j) {
      const double p = community[i] == community[j] ? c.p_in : c.p_out;
      if (graph_stream.uniform() < p) adjacency.connect(i, j);
    }
  }
  data.adjacency = std::move(adjacency);
  return data;
}

// Maps plan positions (time order) back to row indices.
SplitPlan to_rows(const SplitPlan& plan, const std::vector<std::size_t>& ordering) {
  auto map = [&](const IndexSet& positions) {
    IndexSet rows;
    rows.reserve(positions.size());
    for (std::size_t p : positions) rows.push_back(ordering[p]);
    return rows;
  };
  return SplitPlan(plan.n(), map(plan.train()), map(plan.test()), map(plan.discarded()), plan.scheme());
}

std::vector<double> parse_double_list(const std::string& text, const char* what) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    const auto first = cell.find_first_not_of(' ');
    const auto last = cell.find_last_not_of(' ');
    if (first == std::string::npos) throw ConfigError(std::string("empty entry in ") + what);
    cell = cell.substr(first, last - first + 1);
    double v = 0.0;
    auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || p != cell.data() + cell.size()) {
      throw ConfigError(std::string("invalid number '") + cell + "' in " + what);
    }
    values.push_back(v);
  }
  return values;
}

}  // namespace

CommandOutput cmd_simulate(const ExperimentConfig& c) {
  const PairedSetup setup = paired_setup(c);
  const LinearSmoother hat = checked([&] { return ols_smoother(*setup.design); });

  const MonteCarloErrors mc =
      monte_carlo_errors(*setup.design, setup.beta, setup.covariance, hat, c.reps, c.seed, c.threads);
  const ErrorDecomposition analytic = paired_matrix_route(setup, hat);

  CommandOutput output;
  std::ostringstream csv;
  write_csv(csv, mc);
  output.files.emplace_back("errors.csv", csv.str());

  std::ostringstream summary;
  summary << "# simulate: train / test / out-of-sample mean squared error\n" << describe_config(c) << '\n';
  summary << std::left << std::setw(16) << "quantity" << std::setw(22) << "mc_mean" << std::setw(22)
          << "mc_se" << "analytic\n";
  auto line = [&](const char* name, const McSummary& s, double expected) {
    summary << std::setw(16) << name << std::setw(22) << fmt(s.mean, 10) << std::setw(22)
            << fmt(s.se, 10) << fmt(expected, 10) << '\n';
  };
  line("train_mse", mc.train_summary, analytic.expected_train);
  line("test_mse", mc.test_summary, analytic.expected_test);
  line("oos_mse", mc.oos_summary, analytic.expected_oos);
  summary << '\n'
          << "optimism_train  mc " << fmt(mc.oos_summary.mean - mc.train_summary.mean, 10)
          << "  analytic " << fmt(analytic.optimism_train, 10) << '\n'
          << "optimism_test   mc " << fmt(mc.oos_summary.mean - mc.test_summary.mean, 10)
          << "  analytic " << fmt(analytic.optimism_test, 10) << '\n';
  output.files.emplace_back("summary.txt", summary.str());
  output.report = summary.str();

  if (c.svg) {
    output.files.emplace_back(
        "histogram.svg",
        histogram_svg({{"training", "#1f77b4", mc.train}, {"test set", "#2ca02c", mc.test},
                       {"out-of-sample", "#d62728", mc.oos}},
                      "Distribution of mean squared error over " + std::to_string(c.reps) +
                          " replications"));
  }
  return output;
}

CommandOutput cmd_analytic(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "# analytic error decomposition\n";
  std::istringstream header(describe_config(c));
  for (std::string l; std::getline(header, l);) {
    if (l.rfind("reps", 0) == 0 || l.rfind("seed", 0) == 0) continue;
    out << "# " << l << '\n';
  }
  out << "quantity,closed_form,matrix\n";

  if (c.dgp == "paired") {
    const PairedSetup setup = paired_setup(c);
    const LinearSmoother hat = checked([&] { return ols_smoother(*setup.design); });
    const ErrorDecomposition closed = closed_form_equicorrelated_ols(c.n, c.degree, c.rho, c.sigma2);
    const ErrorDecomposition matrix = paired_matrix_route(setup, hat);
    add_decomposition_rows(out, &closed, matrix);
  } else {
    if (c.estimator != "knn") {
      throw ConfigError("analytic for dgp=ar1 needs estimator=knn(k=2) or knn(k=4)");
    }
    const auto [smoother, sigma] = checked([&] {
      return std::pair{knn_smoother(c.n, c.knn_k), materialize(Ar1{c.sigma2, c.phi, c.n})};
    });
    const ErrorDecomposition matrix =
        analytic_decomposition(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(c.n)), smoother, sigma,
                               std::nullopt);
    const auto mid = static_cast<Eigen::Index>(c.n / 2);
    const double interior = (smoother.matrix() * sigma)(mid, mid);
    std::string closed = "NA";
    if (c.knn_k == 2 || c.knn_k == 4) {
      closed = fmt(checked([&] { return closed_form_ar1_knn_covariance(c.phi, c.sigma2, c.knn_k); }));
    }
    out << "interior_point_covariance," << closed << ',' << fmt(interior) << '\n';
    add_decomposition_rows(out, nullptr, matrix);
  }
  CommandOutput output;
  output.files.emplace_back("decomposition.txt", out.str());
  output.report = out.str();
  return output;
}

CommandOutput cmd_split(const ExperimentConfig& c) {
  SplitData data = c.input.empty() ? synthetic_split_data(c) : read_split_input(c.input);
  if (data.n < 2) throw ConfigError("split needs at least two observations");

  SeededStream stream(c.seed, 0);
  std::vector<SplitPlan> plans = checked([&]() -> std::vector<SplitPlan> {
    if (c.scheme == "kfold") return kfold(data.n, c.k, stream);
    if (c.scheme == "loo") return leave_one_out(data.n);
    if (c.scheme == "temporal_block") return {temporal_block(data.n, c.test_fraction, c.gap)};
    if (c.scheme == "non_dependent_cv") return non_dependent_cv(data.n, c.k, c.gap);
    if (c.scheme == "leave_one_group_out") {
      if (data.groups.empty()) throw ConfigError("leave_one_group_out needs a 'group' column");
      return leave_one_group_out(data.groups);
    }
    if (c.scheme == "network") {
      if (!data.adjacency) throw ConfigError("network split needs a graph (use --preset network-group)");
      return {network_neighborhood_split(*data.adjacency, c.test_fraction, c.buffer, stream)};
    }
    throw ConfigError("unknown scheme '" + c.scheme + "'");
  });

  CommandOutput output;
  std::ostringstream report;
  report << "scheme " << plans.front().scheme() << ": " << plans.size() << " plan(s) over " << data.n
         << " observations\n";
  const bool positional = c.scheme != "leave_one_group_out" && c.scheme != "network";
  for (std::size_t i = 0; i < plans.size(); ++i) {
    const SplitPlan plan = positional ? to_rows(plans[i], data.ordering) : plans[i];
    std::ostringstream csv;
    write_csv(csv, plan);
    const std::string name = plans.size() == 1 ? "split.csv" : "split_" + std::to_string(i) + ".csv";
    output.files.emplace_back(name, csv.str());
    report << "  " << name << ": train " << plan.train().size() << ", test " << plan.test().size()
           << ", discarded " << plan.discarded().size() << '\n';
  }
  output.report = report.str();
  return output;
}

CommandOutput cmd_compare(const ExperimentConfig& c) {
  const Estimator estimator = estimator_of(c);
  std::vector<Scheme> schemes;
  for (const auto& term : c.schemes) schemes.push_back(to_scheme(term, c));
  if (schemes.empty()) throw ConfigError("compare needs at least one scheme");

  Dgp dgp;
  if (c.dgp == "paired") {
    const PairedSetup setup = paired_setup(c);
    dgp = PairedRegressionDgp{setup.design, setup.beta, c.sigma2, c.rho};
  } else {
    dgp = Ar1Dgp{c.phi, c.sigma2, c.n, c.block_size};
  }
  // A single replication exercises every plan builder and fit before the long run.
  checked([&] { return compare_schemes(dgp, estimator, schemes, 1, c.seed, 1); });

  const SchemeComparison result = compare_schemes(dgp, estimator, schemes, c.reps, c.seed, c.threads);

  CommandOutput output;
  std::ostringstream csv;
  write_csv(csv, result);
  output.files.emplace_back("comparison.csv", csv.str());

  std::ostringstream report;
  report << describe_config(c) << "estimator: " << estimator.tag() << "\n\n";
  report << std::left << std::setw(34) << "scheme" << std::setw(16) << "mean_estimate" << std::setw(14)
         << "mc_se" << std::setw(16) << "minus_true" << "se_diff\n";
  for (const auto& s : result.schemes) {
    report << std::setw(34) << s.scheme << std::setw(16) << fmt(s.estimate.mean, 6) << std::setw(14)
           << fmt(s.estimate.se, 4) << std::setw(16) << fmt(s.bias.mean, 6) << fmt(s.bias.se, 4) << '\n';
  }
  report << std::setw(34) << "true_oos" << std::setw(16) << fmt(result.true_oos.mean, 6)
         << fmt(result.true_oos.se, 4) << '\n';
  output.report = report.str();
  return output;
}

CommandOutput cmd_stats_mcnemar(std::uint64_t b, std::uint64_t c, bool exact) {
  const auto mode = exact ? McNemarMode::ExactBinomial : McNemarMode::ChiSquareCorrected;
  const McNemarResult r = checked([&] { return mcnemar_test(b, c, mode); });
  std::ostringstream out;
  out << "mcnemar (" << (exact ? "exact binomial" : "continuity-corrected chi-square") << ")\n"
      << "b=" << b << " c=" << c << '\n'
      << "statistic=" << fmt(r.statistic) << '\n'
      << "p_value=" << fmt(r.p_value) << '\n';
  return {{}, out.str()};
}

CommandOutput cmd_stats_meng(const std::string& population, const std::string& responded) {
  const auto values = parse_double_list(population, "population");
  const auto flags = parse_double_list(responded, "responded");
  std::vector<bool> mask;
  for (double f : flags) {
    if (f != 0.0 && f != 1.0) throw ConfigError("responded entries must be 0 or 1");
    mask.push_back(f == 1.0);
  }
  const MengDecomposition m = checked([&] { return meng_decomposition(values, mask); });
  std::ostringstream out;
  out << "meng decomposition\n"
      << "error=" << fmt(m.error) << '\n'
      << "data_quality=" << (m.quality_defined ? fmt(m.data_quality) : std::string("undefined")) << '\n'
      << "data_quantity=" << fmt(m.data_quantity) << '\n'
      << "difficulty=" << fmt(m.difficulty) << '\n'
      << "product=" << fmt(m.data_quality * m.data_quantity * m.difficulty) << '\n';
  return {{}, out.str()};
}

void write_outputs(const CommandOutput& output, const std::string& directory) {
  if (output.files.empty()) return;
  std::filesystem::create_directories(directory);
  for (const auto& [name, contents] : output.files) {
    const auto path = std::filesystem::path(directory) / name;
    std::ofstream file(path, std::ios::binary);
    file << contents;
    if (!file) throw std::runtime_error("failed to write " + path.string());
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
        const std::optional<std::string>& env_seed) {
  CLI::App app{"Optimism of cross-validation under dependent data"};
  app.require_subcommand(1);

  Settings flags;
  auto add_experiment_options = [&flags](CLI::App* cmd) {
    auto bind = [&](const std::string& name, const std::string& key, const std::string& help) {
      cmd->add_option_function<std::string>(
          name, [&flags, key](const std::string& v) { flags[key] = v; }, help);
    };
    bind("--preset", "preset", "paper-fig-mse | ar1-bergmeir | network-group");
    bind("--config", "config", "key = value settings file");
    bind("--seed", "seed", "64-bit seed (overrides OPTCV_SEED)");
    bind("--reps", "reps", "Monte Carlo replications");
    bind("--cov", "cov", "covariance, e.g. equicorrelated(sigma2=1, rho=0.5) or ar1(phi=0.5)");
    bind("--rho", "rho", "equicorrelation");
    bind("--phi", "phi", "AR(1) coefficient");
    bind("--sigma2", "sigma2", "noise variance");
    bind("--beta", "beta", "common value of every regression coefficient");
    bind("--n", "n", "number of observations");
    bind("--degree", "degree", "polynomial degree");
    bind("--estimator", "estimator", "ols | knn(k=2)");
    bind("--scheme", "scheme", "split scheme for the split command");
    bind("--schemes", "schemes", "comma-separated schemes for the compare command");
    bind("--k", "k", "number of folds");
    bind("--test-fraction", "test_fraction", "test share for temporal/network splits");
    bind("--gap", "gap", "observations dropped between train and test");
    bind("--buffer", "buffer", "network split drops train neighbours of test nodes (true/false)");
    bind("--input", "input", "CSV with optional time/group columns (split)");
    bind("--threads", "threads", "worker threads (0 = all cores)");
    bind("--out", "out", "output directory");
    cmd->add_flag_callback("--svg", [&flags] { flags["svg"] = "true"; }, "also write histogram.svg");
  };

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo train/test/out-of-sample errors");
  auto* analytic = app.add_subcommand("analytic", "closed-form and matrix error decomposition");
  auto* split = app.add_subcommand("split", "materialise a train/test split");
  auto* compare = app.add_subcommand("compare", "compare split schemes against true error");
  for (auto* cmd : {simulate, analytic, split, compare}) add_experiment_options(cmd);

  auto* stats = app.add_subcommand("stats", "auxiliary statistics");
  stats->require_subcommand(1);
  auto* mcnemar = stats->add_subcommand("mcnemar", "McNemar's test on discordant counts");
  std::uint64_t b = 0;
  std::uint64_t c = 0;
  bool exact = false;
  mcnemar->add_option("--b", b, "count of pairs where only the first classifier is right")->required();
  mcnemar->add_option("--c", c, "count of pairs where only the second classifier is right")->required();
  mcnemar->add_flag("--exact", exact, "exact binomial instead of corrected chi-square");
  auto* meng = stats->add_subcommand("meng", "error decomposition of a respondent mean");
  std::string population;
  std::string responded;
  meng->add_option("--population", population, "comma-separated population values")->required();
  meng->add_option("--responded", responded, "comma-separated 0/1 response indicators")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  CommandOutput output;
  std::string directory = ".";
  try {
    if (stats->parsed()) {
      output = mcnemar->parsed() ? cmd_stats_mcnemar(b, c, exact) : cmd_stats_meng(population, responded);
    } else {
      const ExperimentConfig config = resolve_config(flags, env_seed);
      directory = config.out_dir;
      if (simulate->parsed()) output = cmd_simulate(config);
      if (analytic->parsed()) output = cmd_analytic(config);
      if (split->parsed()) output = cmd_split(config);
      if (compare->parsed()) output = cmd_compare(config);
    }
  } catch (const ConfigError& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }

  try {
    write_outputs(output, directory);
  } catch (const std::exception& e) {
    err << "output failure: " << e.what() << '\n';
    return kExitNumeric;
  }
  out << output.report;
  return kExitOk;
}

}  // namespace optcv::cli
