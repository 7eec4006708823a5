#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "qw2d/lattice.hpp"
#include "qw2d/model.hpp"
#include "qw2d/spectral.hpp"

namespace qw2d {

struct ComparisonReport {
  std::string name;
  double metric = 0.0;
  double tolerance = 0.0;
  bool passed = false;  // metric <= tolerance; NaN never passes
  std::uint64_t seed = 0;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
};

ComparisonReport make_report(std::string name, double metric, double tolerance,
                             std::uint64_t seed = 0,
                             nlohmann::ordered_json details = nlohmann::ordered_json::object());

// One JSON object per line: name, metric, tolerance, passed, seed, details.
std::string to_json_line(const ComparisonReport& report);

// Seeded uniform doubles built from the top 53 bits of mt19937_64.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo, double hi);
  Wavenumber wavenumber();

 private:
  std::mt19937_64 engine_;
};

// Hadamard-like coins, start (1, 0) at the origin, one step.
ComparisonReport check_golden_step();

ComparisonReport check_unitarity(const Model& model, const LatticeState& state0, std::int64_t t);

// Lattice evolution against the inverse-transformed spectral evolution on a
// (2t + 1)^2 wavenumber grid.
ComparisonReport check_lattice_vs_spectral(const Model& model, const LatticeState& state0,
                                           std::int64_t t);

// |lambda| = 1, lambda_1 lambda_2 = e^{i delta}, and group velocities against
// central differences of arg lambda.
std::vector<ComparisonReport> check_spectral_invariants(const Model& model, int samples,
                                                        std::uint64_t seed);

// j_+ j_- = 1, phi(j_+) = 0 and the squared semi-axes against |f(j_+)|.
ComparisonReport check_derived_constants(const Model& model);

// Forward determinant against finite differences (h = 1e-5), and its
// reciprocal against the branch-matched inverse Jacobian.
std::vector<ComparisonReport> check_jacobian(const Model& model, int samples,
                                             std::uint64_t seed);

ComparisonReport check_roundtrip(const Model& model, int samples, std::uint64_t seed);

// Every interior point has 16 preimages, 8 per Jacobian sign (4 each for a
// degenerate model, which has no minus branch).
ComparisonReport check_branch_count(const Model& model, int samples, std::uint64_t seed);

// Containment of the forward image of a grid_n^2 wavenumber grid, and
// tightness (min E_R, min E_T).
std::vector<ComparisonReport> check_support(const Model& model, int grid_n);

ComparisonReport check_normalization(const Model& model, const InitialSpectrum& spectrum,
                                     int order);

// Analytic bin masses on a bins x bins grid over [-1, 1]^2.
Eigen::ArrayXXd analytic_bin_masses(const Model& model, const InitialSpectrum& spectrum,
                                    int bins, int n_psi, int n_theta);

// Empirical masses of X_t/t. A point exactly on an interior edge goes to the
// lower bin.
Eigen::ArrayXXd empirical_bin_masses(const PositionDistribution& dist, int bins);

// L1 distance per time, a strictly decreasing check across times, and the
// empirical mass outside the 5%-dilated support at the last time.
std::vector<ComparisonReport> check_weak_limit(const Model& model,
                                               const InitialSpectrum& spectrum,
                                               const std::vector<PositionDistribution>& dists,
                                               int bins);

struct CharTriple {
  Eigen::Vector2d xi;
  std::complex<double> empirical;
  std::complex<double> spectral;
  std::complex<double> density;
};

std::vector<CharTriple> char_function_triples(const Model& model,
                                              const InitialSpectrum& spectrum,
                                              const PositionDistribution& dist,
                                              const std::vector<Eigen::Vector2d>& xis,
                                              int grid_n, int order);

// Max pairwise difference of the three values, and spectral vs density alone.
std::vector<ComparisonReport> check_char_function(const Model& model,
                                                  const InitialSpectrum& spectrum,
                                                  const PositionDistribution& dist,
                                                  const std::vector<Eigen::Vector2d>& xis);

// For a + b = 1: the inverse Jacobian against 1/((1 - v1^2)(1 - v2^2)) and
// the reciprocal forward Jacobian, and support membership against the
// single-ellipse formula on a grid_n^2 grid.
std::vector<ComparisonReport> check_degenerate(const Model& model, int grid_n,
                                               std::uint64_t seed);

struct SuiteOptions {
  std::uint64_t seed = 20240601;
  std::vector<std::int64_t> times{100, 300, 500};
  int bins = 50;
  int char_time = 300;
  std::vector<Eigen::Vector2d> xis{Eigen::Vector2d(1.0, 0.0), Eigen::Vector2d(0.0, 1.0),
                                   Eigen::Vector2d(1.0, 1.0)};
  std::vector<std::string> subset;  // empty runs everything
  double tolerance_scale = 1.0;
};

// Names accepted in SuiteOptions::subset.
const std::vector<std::string>& suite_check_names();

std::vector<ComparisonReport> run_suite(const Model& model, const Spinor& spinor,
                                        const SuiteOptions& options);

// Fixed-width table of name, metric, tolerance and PASS/FAIL.
std::string summary_table(const std::vector<ComparisonReport>& reports);

}  // namespace qw2d
