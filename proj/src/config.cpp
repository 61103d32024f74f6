#include "effham/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "effham/errors.hpp"

namespace effham {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace((unsigned char)s[b])) ++b;
  while (e > b && std::isspace((unsigned char)s[e - 1])) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void fail(int lineno, const std::string& what) {
  throw ConfigError("config line " + std::to_string(lineno) + ": " + what);
}

double to_double(const std::string& v, int lineno) {
  try {
    std::size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    fail(lineno, "expected a number, got '" + v + "'");
  }
}

long to_long(const std::string& v, int lineno) {
  try {
    std::size_t pos = 0;
    long d = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    fail(lineno, "expected an integer, got '" + v + "'");
  }
}

std::uint64_t to_u64(const std::string& v, int lineno) {
  try {
    std::size_t pos = 0;
    unsigned long long d = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    fail(lineno, "expected an unsigned integer, got '" + v + "'");
  }
}

bool to_bool(const std::string& v, int lineno) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  fail(lineno, "expected a boolean, got '" + v + "'");
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream is(text);
  std::string raw, section;
  int lineno = 0;
  while (std::getline(is, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos)
      raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail(lineno, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "chain" && section != "state" && section != "ada" &&
          section != "adam" && section != "basis" && section != "learn" &&
          section != "bch" && section != "run")
        fail(lineno, "unknown section [" + section + "]");
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(lineno, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty()) fail(lineno, "empty key or value");

    if (section == "chain") {
      if (key == "L") cfg.chain.L = (int)to_long(val, lineno);
      else if (key == "J_z") cfg.chain.J_z = to_double(val, lineno);
      else if (key == "h_z") cfg.chain.h_z = to_double(val, lineno);
      else if (key == "h_x") cfg.chain.h_x = to_double(val, lineno);
      else fail(lineno, "unknown key '" + key + "' in [chain]");
    } else if (section == "state") {
      if (key == "theta_y") cfg.theta_y = to_double(val, lineno);
      else fail(lineno, "unknown key '" + key + "' in [state]");
    } else if (section == "ada") {
      if (key == "d_E") cfg.ada.d_E = to_double(val, lineno);
      else if (key == "d_var") cfg.ada.d_var = to_double(val, lineno);
      else if (key == "M") cfg.ada.M = (int)to_long(val, lineno);
      else if (key == "tau_min") cfg.ada.tau_min = to_double(val, lineno);
      else if (key == "tau_max") cfg.ada.tau_max = to_double(val, lineno);
      else if (key == "search_resolution")
        cfg.ada.search_resolution = to_double(val, lineno);
      else fail(lineno, "unknown key '" + key + "' in [ada]");
    } else if (section == "adam") {
      if (key == "alpha") cfg.adam.alpha = to_double(val, lineno);
      else if (key == "beta1") cfg.adam.beta1 = to_double(val, lineno);
      else if (key == "beta2") cfg.adam.beta2 = to_double(val, lineno);
      else if (key == "eps") cfg.adam.eps = to_double(val, lineno);
      else if (key == "l_min") cfg.adam.l_min = to_double(val, lineno);
      else if (key == "max_epochs")
        cfg.adam.max_epochs = (int)to_long(val, lineno);
      else if (key == "degeneracy_gap")
        cfg.adam.degeneracy_gap = to_double(val, lineno);
      else if (key == "jitter_scale")
        cfg.adam.jitter_scale = to_double(val, lineno);
      else fail(lineno, "unknown key '" + key + "' in [adam]");
    } else if (section == "basis") {
      if (key == "R") cfg.basis.max_support = (int)to_long(val, lineno);
      else if (key == "parity_filter")
        cfg.basis.parity_filter = to_bool(val, lineno);
      else if (key == "interior_identity")
        cfg.basis.allow_interior_identity = to_bool(val, lineno);
      else if (key == "truncate_N")
        cfg.truncate_N = (int)to_long(val, lineno);
      else if (key == "ranking_file") cfg.ranking_file = val;
      else fail(lineno, "unknown key '" + key + "' in [basis]");
    } else if (section == "learn") {
      if (key == "stride") cfg.learn.stride = (int)to_long(val, lineno);
      else if (key == "max_checkpoints")
        cfg.learn.max_checkpoints = (int)to_long(val, lineno);
      else if (key == "rdm_window")
        cfg.rdm_window = (int)to_long(val, lineno);
      else fail(lineno, "unknown key '" + key + "' in [learn]");
    } else if (section == "bch") {
      if (key == "tau") cfg.bch_tau = to_double(val, lineno);
      else if (key == "extract") cfg.bch_extract = to_bool(val, lineno);
      else fail(lineno, "unknown key '" + key + "' in [bch]");
    } else if (section == "run") {
      if (key == "out_dir") cfg.out_dir = val;
      else if (key == "seed") cfg.seed = to_u64(val, lineno);
      else fail(lineno, "unknown key '" + key + "' in [run]");
    } else {
      fail(lineno, "key '" + key + "' outside any section");
    }
  }
  validate_config(cfg);
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str());
}

void validate_config(const ExperimentConfig& cfg) {
  auto check = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(std::string("invalid config: ") + what);
  };
  check(cfg.chain.L >= 2 && cfg.chain.L <= 24, "L must be in [2, 24]");
  check(std::isfinite(cfg.chain.J_z) && std::isfinite(cfg.chain.h_z) &&
            std::isfinite(cfg.chain.h_x),
        "couplings must be finite");
  check(std::isfinite(cfg.theta_y), "theta_y must be finite");

  check(cfg.ada.d_E > 0, "d_E must be > 0");
  check(cfg.ada.d_var > 0, "d_var must be > 0");
  check(cfg.ada.M >= 1, "M must be >= 1");
  check(cfg.ada.tau_min > 0 && cfg.ada.tau_min < cfg.ada.tau_max,
        "need 0 < tau_min < tau_max");
  check(cfg.ada.search_resolution > 0 && cfg.ada.search_resolution <= 0.5,
        "search_resolution must be in (0, 0.5]");

  check(cfg.adam.alpha > 0, "alpha must be > 0");
  check(cfg.adam.beta1 > 0 && cfg.adam.beta1 < 1, "beta1 must be in (0,1)");
  check(cfg.adam.beta2 > 0 && cfg.adam.beta2 < 1, "beta2 must be in (0,1)");
  check(cfg.adam.eps > 0, "eps must be > 0");
  check(cfg.adam.l_min > 0, "l_min must be > 0");
  check(cfg.adam.max_epochs >= 0, "max_epochs must be >= 0");
  check(cfg.adam.degeneracy_gap > 0, "degeneracy_gap must be > 0");
  check(cfg.adam.jitter_scale >= 0, "jitter_scale must be >= 0");

  check(cfg.basis.max_support >= 1 && cfg.basis.max_support <= 12,
        "R must be in [1, 12]");
  check(cfg.basis.max_support <= cfg.chain.L, "R must not exceed L");
  check(cfg.truncate_N == 0 || cfg.truncate_N >= 3,
        "truncate_N must be 0 (full) or >= 3");
  check(cfg.truncate_N == 0 || !cfg.ranking_file.empty(),
        "truncation requires ranking_file");

  check(cfg.learn.stride >= 1, "stride must be >= 1");
  check(cfg.learn.max_checkpoints >= 0, "max_checkpoints must be >= 0");
  check(cfg.rdm_window >= 0 && cfg.rdm_window < cfg.chain.L,
        "rdm_window must be a site index");
  check(cfg.bch_tau >= 0, "bch tau must be >= 0");
}

}  // namespace effham
