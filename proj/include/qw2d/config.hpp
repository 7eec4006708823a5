#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "qw2d/lattice.hpp"
#include "qw2d/model.hpp"

namespace qw2d {

// Malformed or out-of-range configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  double a1_sq = 0.9;
  double a2_sq = 0.1;
  double alpha1 = 0.0, alpha2 = 0.0;
  double beta1 = 0.0, beta2 = 0.0;
  double delta1 = 0.0, delta2 = 0.0;
  double psi1_re = 1.0, psi1_im = 0.0;
  double psi2_re = 0.0, psi2_im = 0.0;
  std::int64_t steps = 100;
  int grid = 200;
  int bins = 50;
  std::string out = ".";
  std::uint64_t seed = 20240601;
  std::vector<std::int64_t> times;  // empty: simulate uses {steps}, verify uses 100, 300, 500
  std::vector<std::string> checks;  // verify subset; empty runs everything
  std::vector<Eigen::Vector2d> xi{Eigen::Vector2d(1.0, 0.0), Eigen::Vector2d(0.0, 1.0),
                                  Eigen::Vector2d(1.0, 1.0)};
  double tolerance_scale = 1.0;

  CoinParameters coin_parameters() const;
  Spinor spinor() const;
};

struct ConfigKey {
  std::string name;
  std::string help;
};

// Every accepted key, in documentation order.
const std::vector<ConfigKey>& config_keys();

// Flat "key = value" lines; '#' starts a comment. Unknown keys throw.
std::map<std::string, std::string> parse_key_values(std::istream& in);

// Applies one key. Throws ConfigError for unknown keys or unparsable values.
void apply_key(RunConfig& config, const std::string& key, const std::string& value);

// Range checks; also builds the model and spinor to surface their errors.
void validate(const RunConfig& config);

}  // namespace qw2d
