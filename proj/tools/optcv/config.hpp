#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace optcv::cli {

/// Invalid or inconsistent configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat key → value settings, as read from a config file or flags.
using Settings = std::map<std::string, std::string>;

/// `name` or `name(key=value, ...)`.
struct Term {
  std::string name;
  std::map<std::string, std::string> args;
};

Term parse_term(const std::string& text);
/// Splits on commas outside parentheses and parses each piece.
std::vector<Term> parse_term_list(const std::string& text);

/// `key = value` lines; `#` starts a comment.
Settings parse_settings(const std::string& text);
Settings load_settings_file(const std::string& path);

/// Preset settings; throws ConfigError for an unknown name.
Settings preset_settings(const std::string& name);
std::vector<std::string> preset_names();

struct ExperimentConfig {
  std::string preset;
  std::uint64_t seed = 0;
  std::size_t reps = 0;
  std::string dgp;  ///< "paired" or "ar1"
  double rho = 0.0;
  double phi = 0.0;
  double sigma2 = 0.0;
  double beta = 0.0;
  std::size_t n = 0;
  int degree = 0;
  std::string estimator;  ///< "ols" or "knn"
  int knn_k = 2;
  std::size_t k = 5;
  double test_fraction = 0.2;
  std::size_t gap = 0;
  bool buffer = true;
  std::size_t block_size = 20;
  std::string scheme;
  std::vector<Term> schemes;
  std::size_t communities = 0;
  double p_in = 0.0;
  double p_out = 0.0;
  std::string input;
  unsigned threads = 0;
  std::string out_dir = ".";
  bool svg = false;
};

/// Layers defaults < preset < config file < OPTCV_SEED < flags and converts
/// the result to typed values. `flags` may name a preset and a config file
/// under the keys "preset" and "config". Throws ConfigError.
ExperimentConfig resolve_config(const Settings& flags, const std::optional<std::string>& env_seed);

}  // namespace optcv::cli
