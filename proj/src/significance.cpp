#include <algorithm>
#include <cmath>
#include <string>

#include "optcv/error.hpp"
#include "optcv/evaluation.hpp"

namespace optcv {
namespace {

double log_binomial_pmf_half(std::uint64_t trials, std::uint64_t successes) {
  const auto n = static_cast<double>(trials);
  const auto k = static_cast<double>(successes);
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) - n * std::log(2.0);
}

}  // namespace

double chi_square1_survival(double x) {
  if (!(x > 0.0)) return 1.0;
  return std::erfc(std::sqrt(0.5 * x));
}

McNemarResult mcnemar_test(std::uint64_t b, std::uint64_t c, McNemarMode mode) {
  const std::uint64_t trials = b + c;
  if (trials == 0) throw DegenerateInput("McNemar's test needs at least one discordant pair");
  McNemarResult out;
  if (mode == McNemarMode::ChiSquareCorrected) {
    const double diff = std::abs(static_cast<double>(b) - static_cast<double>(c)) - 1.0;
    out.statistic = diff * diff / static_cast<double>(trials);
    out.p_value = chi_square1_survival(out.statistic);
    return out;
  }
  // Under p = ½ the distribution is symmetric, so the two-sided p-value is
  // twice the smaller tail.
  const std::uint64_t smaller = std::min(b, c);
  double tail = 0.0;
  for (std::uint64_t i = 0; i <= smaller; ++i) tail += std::exp(log_binomial_pmf_half(trials, i));
  out.statistic = static_cast<double>(b);
  out.p_value = std::min(1.0, 2.0 * tail);
  return out;
}

MengDecomposition meng_decomposition(const std::vector<double>& population,
                                     const std::vector<bool>& responded) {
  if (population.size() != responded.size()) {
    throw DimensionError("population and response indicator lengths differ");
  }
  const std::size_t total = population.size();
  const auto respondents = static_cast<std::size_t>(std::count(responded.begin(), responded.end(), true));
  if (respondents == 0) throw DegenerateInput("no respondents: the sample mean is undefined");

  const double big_n = static_cast<double>(total);
  const double small_n = static_cast<double>(respondents);
  double pop_sum = 0.0;
  double resp_sum = 0.0;
  for (std::size_t i = 0; i < total; ++i) {
    pop_sum += population[i];
    if (responded[i]) resp_sum += population[i];
  }
  const double pop_mean = pop_sum / big_n;
  double ss = 0.0;
  for (double v : population) ss += (v - pop_mean) * (v - pop_mean);

  MengDecomposition out;
  out.error = resp_sum / small_n - pop_mean;
  out.difficulty = std::sqrt(ss / big_n);
  out.data_quantity = std::sqrt((big_n - small_n) / small_n);
  if (respondents == total || ss == 0.0) {
    // Correlation undefined; the error is exactly zero in both cases.
    out.error = 0.0;
    out.data_quality = 0.0;
    out.quality_defined = false;
    return out;
  }
  const double fraction = small_n / big_n;
  // Cov(R, Y) = mean(R·(Y − Ȳ)) over the population.
  double cov = 0.0;
  for (std::size_t i = 0; i < total; ++i) {
    if (responded[i]) cov += population[i] - pop_mean;
  }
  cov /= big_n;
  out.data_quality = cov / (std::sqrt(fraction * (1.0 - fraction)) * out.difficulty);
  return out;
}

}  // namespace optcv
