#include "qw2d/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "qw2d/errors.hpp"
#include "qw2d/verify.hpp"

namespace qw2d {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(trim(item));
  return parts;
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  T value{};
  const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || end != t.data() + t.size()) {
    throw ConfigError("cannot parse value '" + text + "' for key " + key);
  }
  return value;
}

double parse_real(const std::string& key, const std::string& text) {
  const double v = parse_number<double>(key, text);
  if (!std::isfinite(v)) throw ConfigError("non-finite value for key " + key);
  return v;
}

}  // namespace

CoinParameters RunConfig::coin_parameters() const {
  return CoinParameters::from_squares(a1_sq, a2_sq, {alpha1, alpha2}, {beta1, beta2},
                                      {delta1, delta2});
}

Spinor RunConfig::spinor() const {
  Spinor s;
  s << std::complex<double>(psi1_re, psi1_im), std::complex<double>(psi2_re, psi2_im);
  return s;
}

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys{
      {"a1_sq", "|a_1|^2 of the first coin, in (0, 1)"},
      {"a2_sq", "|a_2|^2 of the second coin, in (0, 1)"},
      {"alpha1", "arg a_1"},
      {"alpha2", "arg a_2"},
      {"beta1", "arg b_1"},
      {"beta2", "arg b_2"},
      {"delta1", "det C_1 = e^{i delta1}"},
      {"delta2", "det C_2 = e^{i delta2}"},
      {"psi1_re", "initial spinor, component 1, real part"},
      {"psi1_im", "initial spinor, component 1, imaginary part"},
      {"psi2_re", "initial spinor, component 2, real part"},
      {"psi2_im", "initial spinor, component 2, imaginary part"},
      {"steps", "number of walk steps (simulate, chars)"},
      {"grid", "grid size: density grid per axis, wavenumber grid for chars"},
      {"bins", "bins per axis for the weak-limit comparison"},
      {"out", "output directory (must exist)"},
      {"seed", "sampler seed"},
      {"times", "comma-separated times (simulate snapshots, verify weak limit)"},
      {"checks", "comma-separated verify subset"},
      {"xi", "semicolon-separated xi pairs, e.g. 1,0;0,1"},
      {"tolerance_scale", "factor applied to every verify tolerance"},
  };
  return keys;
}

std::map<std::string, std::string> parse_key_values(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(number) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const auto& keys = config_keys();
    if (std::none_of(keys.begin(), keys.end(), [&](const ConfigKey& k) { return k.name == key; })) {
      throw ConfigError("line " + std::to_string(number) + ": unknown key '" + key + "'");
    }
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

void apply_key(RunConfig& c, const std::string& key, const std::string& value) {
  if (key == "a1_sq") c.a1_sq = parse_real(key, value);
  else if (key == "a2_sq") c.a2_sq = parse_real(key, value);
  else if (key == "alpha1") c.alpha1 = parse_real(key, value);
  else if (key == "alpha2") c.alpha2 = parse_real(key, value);
  else if (key == "beta1") c.beta1 = parse_real(key, value);
  else if (key == "beta2") c.beta2 = parse_real(key, value);
  else if (key == "delta1") c.delta1 = parse_real(key, value);
  else if (key == "delta2") c.delta2 = parse_real(key, value);
  else if (key == "psi1_re") c.psi1_re = parse_real(key, value);
  else if (key == "psi1_im") c.psi1_im = parse_real(key, value);
  else if (key == "psi2_re") c.psi2_re = parse_real(key, value);
  else if (key == "psi2_im") c.psi2_im = parse_real(key, value);
  else if (key == "steps") c.steps = parse_number<std::int64_t>(key, value);
  else if (key == "grid") c.grid = parse_number<int>(key, value);
  else if (key == "bins") c.bins = parse_number<int>(key, value);
  else if (key == "out") c.out = trim(value);
  else if (key == "seed") c.seed = parse_number<std::uint64_t>(key, value);
  else if (key == "times") {
    c.times.clear();
    for (const std::string& t : split(value, ',')) c.times.push_back(parse_number<std::int64_t>(key, t));
  } else if (key == "checks") {
    c.checks = split(value, ',');
  } else if (key == "xi") {
    c.xi.clear();
    for (const std::string& pair : split(value, ';')) {
      const std::vector<std::string> xy = split(pair, ',');
      if (xy.size() != 2) throw ConfigError("xi entries need two components: '" + pair + "'");
      c.xi.emplace_back(parse_real(key, xy[0]), parse_real(key, xy[1]));
    }
  } else if (key == "tolerance_scale") c.tolerance_scale = parse_real(key, value);
  else throw ConfigError("unknown key '" + key + "'");
}

void validate(const RunConfig& c) {
  if (c.steps < 0) throw ConfigError("steps must be >= 0");
  if (c.grid < 1) throw ConfigError("grid must be >= 1");
  if (c.bins < 1) throw ConfigError("bins must be >= 1");
  if (c.tolerance_scale < 0.0) throw ConfigError("tolerance_scale must be >= 0");
  if (c.out.empty()) throw ConfigError("out must not be empty");
  for (std::int64_t t : c.times) {
    if (t < 0) throw ConfigError("times must be >= 0");
  }
  for (const Eigen::Vector2d& x : c.xi) {
    if (x.cwiseAbs().maxCoeff() > 3.0) throw ConfigError("xi entries must satisfy |xi_q| <= 3");
  }
  const auto& names = suite_check_names();
  for (const std::string& s : c.checks) {
    if (std::find(names.begin(), names.end(), s) == names.end()) {
      throw ConfigError("unknown check '" + s + "'");
    }
  }
  try {
    Model model(c.coin_parameters());
    (void)model;
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  }
  if (std::abs(c.spinor().squaredNorm() - 1.0) > kUnitSpinorTolerance) {
    throw ConfigError("initial spinor must have unit norm");
  }
}

}  // namespace qw2d
