#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "optcv/sampling.hpp"

namespace optcv::cli {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "preset", "config", "seed",      "reps",   "dgp",        "cov",         "rho",
      "phi",    "sigma2", "beta",      "n",      "degree",     "estimator",   "k",
      "test_fraction",    "gap",       "buffer", "block_size", "scheme",      "schemes",
      "communities",      "p_in",      "p_out",  "input",      "threads",     "out",
      "svg"};
  return keys;
}

template <class T>
T parse_number(const std::string& key, const std::string& raw) {
  const std::string text = trim(raw);
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last) {
    throw ConfigError("invalid value for '" + key + "': '" + raw + "'");
  }
  return value;
}

bool parse_bool(const std::string& key, const std::string& raw) {
  std::string text = trim(raw);
  std::transform(text.begin(), text.end(), text.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ConfigError("invalid boolean for '" + key + "': '" + raw + "'");
}

// Rewrites `cov = ...` into the dgp / sigma2 / rho / phi keys of the same layer.
void expand_cov(Settings& layer) {
  const auto it = layer.find("cov");
  if (it == layer.end()) return;
  const Term term = parse_term(it->second);
  auto take = [&](const char* name, const char* key) {
    if (auto a = term.args.find(name); a != term.args.end()) layer[key] = a->second;
  };
  std::set<std::string> allowed;
  if (term.name == "equicorrelated") {
    layer["dgp"] = "paired";
    allowed = {"sigma2", "rho"};
  } else if (term.name == "iid") {
    layer["dgp"] = "paired";
    layer["rho"] = "0";
    allowed = {"sigma2"};
  } else if (term.name == "ar1") {
    layer["dgp"] = "ar1";
    allowed = {"sigma2", "phi"};
  } else {
    throw ConfigError("unsupported covariance '" + term.name +
                      "' (expected equicorrelated, iid or ar1)");
  }
  for (const auto& [name, value] : term.args) {
    if (!allowed.count(name)) {
      throw ConfigError("unknown argument '" + name + "' for covariance '" + term.name + "'");
    }
  }
  take("sigma2", "sigma2");
  take("rho", "rho");
  take("phi", "phi");
  layer.erase("cov");
}

void check_keys(const Settings& layer, const std::string& origin) {
  for (const auto& [key, value] : layer) {
    if (!known_keys().count(key)) throw ConfigError("unknown setting '" + key + "' in " + origin);
  }
}

void merge(Settings& into, Settings layer, const std::string& origin) {
  check_keys(layer, origin);
  expand_cov(layer);
  for (auto& [key, value] : layer) into[key] = value;
}

Settings defaults() {
  return {
      {"seed", std::to_string(kDefaultSeed)},
      {"reps", "10000"},
      {"dgp", "paired"},
      {"rho", "0.5"},
      {"phi", "0.8"},
      {"sigma2", "1"},
      {"beta", "10"},
      {"n", "100"},
      {"degree", "20"},
      {"estimator", "ols"},
      {"k", "5"},
      {"test_fraction", "0.2"},
      {"gap", "0"},
      {"buffer", "true"},
      {"block_size", "20"},
      {"scheme", "kfold"},
      {"schemes", "kfold, loo, temporal_block"},
      {"communities", "6"},
      {"p_in", "0.3"},
      {"p_out", "0.02"},
      {"threads", "0"},
      {"out", "."},
      {"svg", "false"},
  };
}

}  // namespace

Term parse_term(const std::string& text) {
  const std::string s = trim(text);
  Term term;
  const auto open = s.find('(');
  if (open == std::string::npos) {
    term.name = s;
  } else {
    if (s.back() != ')') throw ConfigError("unbalanced parentheses in '" + text + "'");
    term.name = trim(s.substr(0, open));
    const std::string inner = s.substr(open + 1, s.size() - open - 2);
    std::stringstream pieces(inner);
    std::string piece;
    while (std::getline(pieces, piece, ',')) {
      if (trim(piece).empty()) continue;
      const auto eq = piece.find('=');
      if (eq == std::string::npos) throw ConfigError("expected key=value in '" + text + "'");
      const std::string key = trim(piece.substr(0, eq));
      if (term.args.count(key)) throw ConfigError("duplicate argument '" + key + "' in '" + text + "'");
      term.args[key] = trim(piece.substr(eq + 1));
    }
  }
  if (term.name.empty()) throw ConfigError("empty name in '" + text + "'");
  return term;
}

std::vector<Term> parse_term_list(const std::string& text) {
  std::vector<Term> terms;
  int depth = 0;
  std::string current;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth < 0) throw ConfigError("unbalanced parentheses in '" + text + "'");
    if (c == ',' && depth == 0) {
      if (!trim(current).empty()) terms.push_back(parse_term(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (depth != 0) throw ConfigError("unbalanced parentheses in '" + text + "'");
  if (!trim(current).empty()) terms.push_back(parse_term(current));
  return terms;
}

Settings parse_settings(const std::string& text) {
  Settings out;
  std::stringstream lines(text);
  std::string line;
  int number = 0;
  while (std::getline(lines, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(number) + ": expected key = value");
    }
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

Settings load_settings_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_settings(buffer.str());
}

std::vector<std::string> preset_names() { return {"paper-fig-mse", "ar1-bergmeir", "network-group"}; }

Settings preset_settings(const std::string& name) {
  if (name == "paper-fig-mse") {
    return {
        {"dgp", "paired"},
        {"n", "100"},
        {"degree", "20"},
        {"beta", "10"},
        {"rho", "0.5"},
        {"sigma2", "1"},
        {"reps", "10000"},
        {"estimator", "ols"},
        {"schemes",
         "kfold(k=5), loo, temporal_block(test_fraction=0.5), "
         "temporal_block(test_fraction=0.4, gap=2), non_dependent_cv(k=5, gap=1), "
         "leave_one_group_out, network(test_fraction=0.2, buffer=false)"},
    };
  }
  if (name == "ar1-bergmeir") {
    return {
        {"dgp", "ar1"},
        {"phi", "0.8"},
        {"sigma2", "1"},
        {"n", "200"},
        {"reps", "500"},
        {"estimator", "ols"},
        {"block_size", "20"},
        {"scheme", "temporal_block"},
        {"test_fraction", "0.2"},
        {"schemes",
         "kfold(k=5), loo, temporal_block(test_fraction=0.2), "
         "temporal_block(test_fraction=0.2, gap=2), non_dependent_cv(k=5, gap=2)"},
    };
  }
  if (name == "network-group") {
    return {
        {"n", "60"},
        {"communities", "6"},
        {"p_in", "0.3"},
        {"p_out", "0.02"},
        {"scheme", "leave_one_group_out"},
        {"test_fraction", "0.1"},
        {"buffer", "true"},
    };
  }
  throw ConfigError("unknown preset '" + name + "'");
}

ExperimentConfig resolve_config(const Settings& flags, const std::optional<std::string>& env_seed) {
  check_keys(flags, "command-line flags");
  Settings file;
  if (auto it = flags.find("config"); it != flags.end()) {
    file = load_settings_file(it->second);
    if (file.count("config")) throw ConfigError("config files cannot include other config files");
  }

  std::string preset;
  if (auto it = file.find("preset"); it != file.end()) preset = it->second;
  if (auto it = flags.find("preset"); it != flags.end()) preset = it->second;

  Settings merged = defaults();
  if (!preset.empty()) merge(merged, preset_settings(preset), "preset '" + preset + "'");
  merge(merged, file, "config file");
  if (env_seed && !trim(*env_seed).empty()) merged["seed"] = *env_seed;
  Settings flag_layer = flags;
  flag_layer.erase("config");
  merge(merged, flag_layer, "command-line flags");

  ExperimentConfig c;
  c.preset = preset;
  c.seed = parse_number<std::uint64_t>("seed", merged.at("seed"));
  c.reps = parse_number<std::size_t>("reps", merged.at("reps"));
  c.dgp = trim(merged.at("dgp"));
  c.rho = parse_number<double>("rho", merged.at("rho"));
  c.phi = parse_number<double>("phi", merged.at("phi"));
  c.sigma2 = parse_number<double>("sigma2", merged.at("sigma2"));
  c.beta = parse_number<double>("beta", merged.at("beta"));
  c.n = parse_number<std::size_t>("n", merged.at("n"));
  c.degree = parse_number<int>("degree", merged.at("degree"));
  c.k = parse_number<std::size_t>("k", merged.at("k"));
  c.test_fraction = parse_number<double>("test_fraction", merged.at("test_fraction"));
  c.gap = parse_number<std::size_t>("gap", merged.at("gap"));
  c.buffer = parse_bool("buffer", merged.at("buffer"));
  c.block_size = parse_number<std::size_t>("block_size", merged.at("block_size"));
  c.scheme = trim(merged.at("scheme"));
  c.schemes = parse_term_list(merged.at("schemes"));
  c.communities = parse_number<std::size_t>("communities", merged.at("communities"));
  c.p_in = parse_number<double>("p_in", merged.at("p_in"));
  c.p_out = parse_number<double>("p_out", merged.at("p_out"));
  if (auto it = merged.find("input"); it != merged.end()) c.input = it->second;
  c.threads = parse_number<unsigned>("threads", merged.at("threads"));
  c.out_dir = merged.at("out");
  c.svg = parse_bool("svg", merged.at("svg"));

  const Term estimator = parse_term(merged.at("estimator"));
  c.estimator = estimator.name;
  if (c.estimator == "knn") {
    for (const auto& [key, value] : estimator.args) {
      if (key != "k") throw ConfigError("unknown argument '" + key + "' for estimator knn");
    }
    if (auto it = estimator.args.find("k"); it != estimator.args.end()) {
      c.knn_k = parse_number<int>("estimator k", it->second);
    }
  } else if (c.estimator != "ols" || !estimator.args.empty()) {
    throw ConfigError("estimator must be 'ols' or 'knn(k=K)', got '" + merged.at("estimator") + "'");
  }

  if (c.dgp != "paired" && c.dgp != "ar1") {
    throw ConfigError("dgp must be 'paired' or 'ar1', got '" + c.dgp + "'");
  }
  if (c.reps < 1) throw ConfigError("reps must be >= 1");
  if (c.out_dir.empty()) throw ConfigError("output directory must not be empty");
  return c;
}

}  // namespace optcv::cli
