#include "qw2d/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "qw2d/config.hpp"
#include "qw2d/csv.hpp"
#include "qw2d/errors.hpp"
#include "qw2d/lattice.hpp"
#include "qw2d/limit.hpp"
#include "qw2d/quadrature.hpp"
#include "qw2d/spectral.hpp"
#include "qw2d/verify.hpp"

namespace qw2d {

namespace {

namespace fs = std::filesystem;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::ofstream open_output(const RunConfig& c, const std::string& name,
                          std::ios::openmode mode = std::ios::out) {
  const fs::path path = fs::path(c.out) / name;
  std::ofstream f(path, mode);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  return f;
}

void finish(std::ofstream& f, const std::string& name) {
  f.flush();
  if (!f) throw IoError("write failed for " + name);
}

void write_boundary(const Model& model, const RunConfig& c) {
  std::ofstream f = open_output(c, "support_boundary.csv");
  f << "v1,v2\n";
  for (const VelocityPoint& p : support_boundary(model, 720)) {
    f << format_double(p.v1) << ',' << format_double(p.v2) << '\n';
  }
  finish(f, "support_boundary.csv");
}

int cmd_simulate(const RunConfig& c, bool dump, std::ostream& out) {
  const Model model(c.coin_parameters());
  std::vector<std::int64_t> times = c.times.empty() ? std::vector<std::int64_t>{c.steps} : c.times;
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());

  std::ofstream moments_file = open_output(c, "moments.csv");
  moments_file << "t,mean1,mean2,second11,second12,second22\n";
  LatticeState state = initial_state_delta(c.spinor());
  for (std::int64_t t : times) {
    state = evolve(model, std::move(state), t - state.time());
    const PositionDistribution dist = position_distribution(state);
    const std::string name = "distribution_t" + std::to_string(t) + ".csv";
    std::ofstream f = open_output(c, name);
    write_distribution_csv(f, dist);
    finish(f, name);
    if (dump) {
      const std::string bin = "amplitudes_t" + std::to_string(t) + ".bin";
      std::ofstream b = open_output(c, bin, std::ios::out | std::ios::binary);
      write_amplitudes_binary(b, state);
      finish(b, bin);
    }
    if (t >= 1) {
      const MomentSummary m = moments(dist, t);
      moments_file << t << ',' << format_double(m.mean(0)) << ',' << format_double(m.mean(1))
                   << ',' << format_double(m.second(0, 0)) << ','
                   << format_double(m.second(0, 1)) << ',' << format_double(m.second(1, 1))
                   << '\n';
    }
    out << "t=" << t << " norm=" << format_double(state.norm_squared()) << '\n';
  }
  finish(moments_file, "moments.csv");
  return kExitSuccess;
}

int cmd_density(const RunConfig& c) {
  const Model model(c.coin_parameters());
  const InitialSpectrum spectrum = fourier_initial(initial_state_delta(c.spinor()));
  std::ofstream f = open_output(c, "density.csv");
  f << "v1,v2,f,inside_flag\n";
  const int n = c.grid;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const VelocityPoint v{-1.0 + (2.0 * i + 1.0) / n, -1.0 + (2.0 * j + 1.0) / n};
      const std::optional<double> value = try_density(model, spectrum, v);
      f << format_double(v.v1) << ',' << format_double(v.v2) << ','
        << format_double(value ? *value : 0.0) << ',' << (value ? 1 : 0) << '\n';
    }
  }
  finish(f, "density.csv");
  write_boundary(model, c);
  return kExitSuccess;
}

int cmd_support(const RunConfig& c, std::ostream& out) {
  const Model model(c.coin_parameters());
  const DerivedConstants& dc = model.constants();
  write_boundary(model, c);
  std::ofstream f = open_output(c, "support_constants.csv");
  const std::vector<std::pair<std::string, double>> rows{
      {"a", dc.a},           {"b", dc.b},           {"d_j", dc.d_j},
      {"j_plus", dc.j_plus}, {"j_minus", dc.j_minus}, {"axis_r1", dc.axis_r1},
      {"axis_r2", dc.axis_r2}, {"axis_t1", dc.axis_t1}, {"axis_t2", dc.axis_t2},
      {"degenerate", dc.degenerate ? 1.0 : 0.0}, {"area", support_area(model)}};
  f << "name,value\n";
  for (const auto& [name, value] : rows) {
    f << name << ',' << format_double(value) << '\n';
    out << name << " = " << format_double(value) << '\n';
  }
  finish(f, "support_constants.csv");
  return kExitSuccess;
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const Model model(c.coin_parameters());
  SuiteOptions opt;
  opt.seed = c.seed;
  if (!c.times.empty()) opt.times = c.times;
  opt.bins = c.bins;
  opt.xis = c.xi;
  opt.subset = c.checks;
  opt.tolerance_scale = c.tolerance_scale;
  const std::vector<ComparisonReport> reports = run_suite(model, c.spinor(), opt);
  std::ofstream f = open_output(c, "verify.jsonl");
  for (const ComparisonReport& r : reports) f << to_json_line(r) << '\n';
  finish(f, "verify.jsonl");
  out << summary_table(reports);
  int status = kExitSuccess;
  for (const ComparisonReport& r : reports) {
    if (!r.passed) {
      err << "check failed: " << r.name << '\n';
      status = kExitVerifyFailure;
    }
  }
  return status;
}

int cmd_chars(const RunConfig& c) {
  if (c.steps < 1) throw ConfigError("chars needs steps >= 1");
  if (c.grid < 16) throw ConfigError("chars needs grid >= 16");
  const Model model(c.coin_parameters());
  const LatticeState state0 = initial_state_delta(c.spinor());
  const PositionDistribution dist = position_distribution(evolve(model, state0, c.steps));
  const std::vector<CharTriple> rows =
      char_function_triples(model, fourier_initial(state0), dist, c.xi, c.grid, 48);
  std::ofstream f = open_output(c, "chars.csv");
  f << "xi1,xi2,empirical_re,empirical_im,spectral_re,spectral_im,density_re,density_im\n";
  for (const CharTriple& r : rows) {
    f << format_double(r.xi(0)) << ',' << format_double(r.xi(1)) << ','
      << format_double(r.empirical.real()) << ',' << format_double(r.empirical.imag()) << ','
      << format_double(r.spectral.real()) << ',' << format_double(r.spectral.imag()) << ','
      << format_double(r.density.real()) << ',' << format_double(r.density.imag()) << '\n';
  }
  finish(f, "chars.csv");
  return kExitSuccess;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-dimensional alternate-coin quantum walk: simulation, limit density, "
               "support geometry and verification"};
  app.fallthrough();
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "flat key = value config file");
  std::map<std::string, std::string> overrides;
  for (const ConfigKey& key : config_keys()) {
    app.add_option_function<std::string>(
        "--" + key.name, [&overrides, name = key.name](const std::string& v) { overrides[name] = v; },
        key.help);
  }
  bool dump = false;
  CLI::App* simulate = app.add_subcommand("simulate", "position distributions and moments");
  simulate->add_flag("--dump", dump, "also write amplitudes_t{T}.bin");
  CLI::App* density_cmd = app.add_subcommand("density", "limit density grid and support boundary");
  CLI::App* support = app.add_subcommand("support", "support boundary and derived constants");
  CLI::App* verify = app.add_subcommand("verify", "cross-validation suite");
  CLI::App* chars = app.add_subcommand("chars", "characteristic function three ways");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    out << app.help();
    return kExitSuccess;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitConfigError;
  }

  RunConfig config;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) {
        err << "cannot read config file " << config_path << '\n';
        return kExitIoError;
      }
      for (const auto& [k, v] : parse_key_values(in)) apply_key(config, k, v);
    }
    for (const auto& [k, v] : overrides) apply_key(config, k, v);
    validate(config);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }

  if (!fs::is_directory(config.out)) {
    err << "output directory does not exist: " << config.out << '\n';
    return kExitIoError;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(config, dump, out);
    if (density_cmd->parsed()) return cmd_density(config);
    if (support->parsed()) return cmd_support(config, out);
    if (verify->parsed()) return cmd_verify(config, out, err);
    if (chars->parsed()) return cmd_chars(config);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const ParameterError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitIoError;
  }
  return kExitConfigError;
}

}  // namespace qw2d
