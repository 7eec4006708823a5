#include "qw2d/verify.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "qw2d/angles.hpp"
#include "qw2d/errors.hpp"
#include "qw2d/limit.hpp"
#include "qw2d/quadrature.hpp"

namespace qw2d {

using cd = std::complex<double>;
using json = nlohmann::ordered_json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool interior_k(const Model& model, const Wavenumber& k, double margin) {
  const double tau = tau_of(model, k).tau;
  return 1.0 - tau * tau > margin;
}

double fd_jacobian(const Model& model, const Wavenumber& k, double h) {
  const VelocityPoint a1 = forward_map(model, {k.k1 + h, k.k2});
  const VelocityPoint b1 = forward_map(model, {k.k1 - h, k.k2});
  const VelocityPoint a2 = forward_map(model, {k.k1, k.k2 + h});
  const VelocityPoint b2 = forward_map(model, {k.k1, k.k2 - h});
  const double d11 = (a1.v1 - b1.v1) / (2.0 * h);
  const double d21 = (a1.v2 - b1.v2) / (2.0 * h);
  const double d12 = (a2.v1 - b2.v1) / (2.0 * h);
  const double d22 = (a2.v2 - b2.v2) / (2.0 * h);
  return std::abs(d11 * d22 - d12 * d21);
}

int bin_of(double v, int bins) {
  const int i = static_cast<int>(std::floor((v + 1.0) * 0.5 * bins));
  return std::clamp(i, 0, bins - 1);
}

Model degenerate_companion(const Model& model) {
  if (model.constants().degenerate) return model;
  CoinParameters p = model.params();
  p.modulus_a[1] = p.modulus_a[0];
  return Model(p);
}

Model phased_companion(const Model& model) {
  CoinParameters p = model.params();
  p.alpha = {p.alpha[0] + 0.4, p.alpha[1] - 1.1};
  p.beta = {p.beta[0] + 0.7, p.beta[1] + 0.25};
  return Model(p);
}

}  // namespace

ComparisonReport make_report(std::string name, double metric, double tolerance,
                             std::uint64_t seed, json details) {
  ComparisonReport r;
  r.name = std::move(name);
  r.metric = metric;
  r.tolerance = tolerance;
  r.passed = metric <= tolerance;
  r.seed = seed;
  r.details = std::move(details);
  return r;
}

std::string to_json_line(const ComparisonReport& report) {
  json j;
  j["name"] = report.name;
  j["metric"] = std::isfinite(report.metric) ? json(report.metric) : json(nullptr);
  j["tolerance"] = report.tolerance;
  j["passed"] = report.passed;
  j["seed"] = report.seed;
  j["details"] = report.details;
  return j.dump();
}

double Sampler::uniform(double lo, double hi) {
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

Wavenumber Sampler::wavenumber() { return {uniform(-kPi, kPi), uniform(-kPi, kPi)}; }

ComparisonReport check_golden_step() {
  const Model model(CoinParameters::from_squares(0.5, 0.5));
  Spinor s;
  s << 1.0, 0.0;
  const PositionDistribution d = position_distribution(step(model, initial_state_delta(s)));
  double err = 0.0;
  double stray = 0.0;
  const Window& w = d.window();
  for (int x1 = w.x1_min; x1 <= w.x1_max; ++x1) {
    for (int x2 = w.x2_min; x2 <= w.x2_max; ++x2) {
      const double p = d.at(x1, x2);
      if (std::abs(x1) == 1 && std::abs(x2) == 1) err = std::max(err, std::abs(p - 0.25));
      else stray = std::max(stray, p);
    }
  }
  return make_report("golden_step", std::max(err, stray), 1e-14, 0,
                     {{"corner_error", err}, {"stray_mass", stray}});
}

ComparisonReport check_unitarity(const Model& model, const LatticeState& state0, std::int64_t t) {
  if (t < 1) throw ParameterError("unitarity check needs t >= 1");
  const LatticeState s = evolve(model, state0, t);
  return make_report("unitarity", std::abs(s.norm_squared() - 1.0), 1e-10, 0, {{"t", t}});
}

ComparisonReport check_lattice_vs_spectral(const Model& model, const LatticeState& state0,
                                           std::int64_t t) {
  if (t < 0 || t > 64) throw ParameterError("lattice/spectral check needs 0 <= t <= 64");
  const LatticeState lat = evolve(model, state0, t);
  const int extent = std::max(state0.window().rows(), state0.window().cols());
  const int grid_n = static_cast<int>(2 * t) + extent;
  const LatticeState spec =
      spectral_lattice_state(model, fourier_initial(state0), t, grid_n, lat.window());
  const double diff = std::max((lat.component1() - spec.component1()).abs().maxCoeff(),
                               (lat.component2() - spec.component2()).abs().maxCoeff());
  return make_report("lattice_vs_spectral", diff, 1e-8, 0, {{"t", t}, {"grid_n", grid_n}});
}

std::vector<ComparisonReport> check_spectral_invariants(const Model& model, int samples,
                                                        std::uint64_t seed) {
  Sampler rng(seed);
  const cd det = std::polar(1.0, model.constants().delta);
  double modulus = 0.0, product = 0.0, solver = 0.0, velocity = 0.0;
  long long excluded = 0;
  const double h = 1e-6;
  for (int i = 0; i < samples; ++i) {
    const Wavenumber k = rng.wavenumber();
    const auto [l1, l2] = eigenvalues(model, k);
    modulus = std::max({modulus, std::abs(std::abs(l1) - 1.0), std::abs(std::abs(l2) - 1.0)});
    product = std::max(product, std::abs(l1 * l2 - det));

    Eigen::ComplexEigenSolver<BlochMatrix> es(bloch_matrix(model, k));
    const cd e0 = es.eigenvalues()(0);
    const cd e1 = es.eigenvalues()(1);
    solver = std::max(solver, std::min(std::max(std::abs(e0 - l1), std::abs(e1 - l2)),
                                       std::max(std::abs(e0 - l2), std::abs(e1 - l1))));

    if (!interior_k(model, k, 1e-6)) {
      ++excluded;
      continue;
    }
    for (int p = 1; p <= 2; ++p) {
      auto lam = [&](double a, double b) {
        const auto ev = eigenvalues(model, {a, b});
        return p == 1 ? ev.first : ev.second;
      };
      const double d1 = std::arg(lam(k.k1 + h, k.k2) * std::conj(lam(k.k1 - h, k.k2))) / (2 * h);
      const double d2 = std::arg(lam(k.k1, k.k2 + h) * std::conj(lam(k.k1, k.k2 - h))) / (2 * h);
      const VelocityPoint v = group_velocity(model, p, k);
      const double err = std::hypot(v.v1 + d1, v.v2 + d2);
      velocity = std::max(velocity, err / std::max(std::hypot(v.v1, v.v2), 1e-3));
    }
  }
  json d{{"samples", samples}};
  json dv{{"samples", samples}, {"excluded_near_degeneracy", excluded}};
  return {make_report("eigenvalue_modulus", modulus, 1e-12, seed, d),
          make_report("eigenvalue_product", product, 1e-12, seed, d),
          make_report("eigenvalue_solver", solver, 1e-12, seed, d),
          make_report("group_velocity_fd", velocity, 1e-6, seed, dv)};
}

ComparisonReport check_derived_constants(const Model& model) {
  const DerivedConstants& dc = model.constants();
  const double a = dc.a;
  const double b = dc.b;
  auto phi = [&](double x) { return a * b * x * x + (1.0 - a * a - b * b) * x + a * b; };
  double err = std::max({std::abs(dc.j_plus * dc.j_minus - 1.0), std::abs(phi(dc.j_plus)),
                         std::abs(phi(dc.j_minus))});
  if (dc.degenerate) {
    err = std::max({err, std::abs(dc.axis_r1 - 2.0 * a), std::abs(dc.axis_r2 - 2.0 * b),
                    std::abs(dc.axis_t1 - 2.0 * a), std::abs(dc.axis_t2 - 2.0 * b)});
  } else {
    const double j = dc.j_plus;
    err = std::max({err, std::abs(dc.axis_r1 - std::abs(f_r1(model, j))),
                    std::abs(dc.axis_r2 - std::abs(f_r2(model, j))),
                    std::abs(dc.axis_t1 - std::abs(f_t1(model, j))),
                    std::abs(dc.axis_t2 - std::abs(f_t2(model, j)))});
  }
  return make_report("derived_constants", err, 1e-12, 0,
                     {{"d_j", dc.d_j},
                      {"j_plus", dc.j_plus},
                      {"axes", {dc.axis_r1, dc.axis_r2, dc.axis_t1, dc.axis_t2}}});
}

std::vector<ComparisonReport> check_jacobian(const Model& model, int samples,
                                             std::uint64_t seed) {
  if (samples < 1) throw ParameterError("jacobian check needs samples >= 1");
  Sampler rng(seed);
  const bool degenerate = model.constants().degenerate;
  double fd = 0.0, match = 0.0;
  long long excluded_small = 0, excluded_edge = 0, used = 0;
  while (used < samples) {
    const Wavenumber k = rng.wavenumber();
    if (!interior_k(model, k, 1e-6)) continue;
    const double j = jacobian_forward(model, k);
    if (j <= 1e-4) {
      ++excluded_small;
      continue;
    }
    const VelocityPoint v = forward_map(model, k);
    const JacobianTerms jt = jacobian_terms(model, v);
    if (support_contains(model, v) != SupportRegion::Inside ||
        (!degenerate && jt.E_R * jt.E_T < kShellProductTolerance)) {
      ++excluded_edge;
      continue;
    }
    ++used;
    fd = std::max(fd, std::abs(fd_jacobian(model, k, 1e-5) - j) / j);
    const double inv = degenerate
                           ? 1.0 / jt.A
                           : jacobian_inverse(model, v, root_sign_of(classify_branch(model, k).m));
    match = std::max(match, std::abs(j * inv - 1.0));
  }
  json d{{"samples", samples},
         {"excluded_small_jacobian", excluded_small},
         {"excluded_boundary", excluded_edge}};
  return {make_report("jacobian_fd", fd, 1e-6, seed, d),
          make_report("jacobian_branch_match", match, 1e-8, seed, d)};
}

ComparisonReport check_roundtrip(const Model& model, int samples, std::uint64_t seed) {
  if (samples < 1) throw ParameterError("round-trip check needs samples >= 1");
  Sampler rng(seed);
  double worst = 0.0;
  long long excluded = 0, missing = 0;
  for (int i = 0; i < samples; ++i) {
    const Wavenumber k = rng.wavenumber();
    const TauTerms t = tau_of(model, k);
    if (1.0 - t.tau * t.tau <= 1e-6 || std::min(std::abs(t.s1), std::abs(t.s2)) < 1e-6) {
      ++excluded;
      continue;
    }
    const VelocityPoint v = forward_map(model, k);
    if (support_contains(model, v) != SupportRegion::Inside) {
      ++excluded;
      continue;
    }
    const std::optional<Wavenumber> back = inverse_map(model, v, classify_branch(model, k));
    if (!back) {
      ++missing;
      worst = kInf;
      continue;
    }
    worst = std::max(worst, wavenumber_distance(*back, k));
  }
  return make_report("roundtrip", worst, 1e-9, seed,
                     {{"samples", samples}, {"excluded", excluded}, {"missing", missing}});
}

ComparisonReport check_branch_count(const Model& model, int samples, std::uint64_t seed) {
  Sampler rng(seed);
  Spinor s;
  s << 1.0, 0.0;
  const InitialSpectrum spectrum({{0, 0, s}});
  const bool degenerate = model.constants().degenerate;
  const int want_plus = 8;
  const int want_minus = degenerate ? 0 : 8;
  long long bad = 0, rejected = 0;
  std::map<int, long long> histogram;
  for (int used = 0; used < samples;) {
    const VelocityPoint v{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    if (!try_density(model, spectrum, v)) {
      ++rejected;
      continue;
    }
    ++used;
    int plus = 0, minus = 0;
    for (const DensityTerm& t : density_terms(model, spectrum, v)) {
      (t.branch.m % 2 == 0 ? plus : minus) += 1;
    }
    ++histogram[plus + minus];
    if (plus != want_plus || minus != want_minus) ++bad;
  }
  json hist = json::object();
  for (const auto& [count, n] : histogram) hist[std::to_string(count)] = n;
  return make_report("branch_count", static_cast<double>(bad), 0.0, seed,
                     {{"samples", samples},
                      {"expected", want_plus + want_minus},
                      {"rejected_outside", rejected},
                      {"histogram", hist}});
}

std::vector<ComparisonReport> check_support(const Model& model, int grid_n) {
  if (grid_n < 128) throw ParameterError("support check needs grid_n >= 128");
  const std::vector<double> nodes = torus_nodes(grid_n);
  double violation = 0.0;
  double min_r = kInf, min_t = kInf;
  long long skipped = 0;
  for (double k1 : nodes) {
    for (double k2 : nodes) {
      const Wavenumber k{k1, k2};
      if (!interior_k(model, k, kSpectralDegeneracyTolerance)) {
        ++skipped;
        continue;
      }
      const JacobianTerms jt = jacobian_terms(model, forward_map(model, k));
      violation = std::max(violation, -std::min(jt.E_R, jt.E_T));
      min_r = std::min(min_r, jt.E_R);
      min_t = std::min(min_t, jt.E_T);
    }
  }
  json d{{"grid_n", grid_n}, {"min_E_R", min_r}, {"min_E_T", min_t}, {"skipped", skipped}};
  return {make_report("support_containment", violation, 1e-12, 0, d),
          make_report("support_tightness", std::max(min_r, min_t), 1e-3, 0, d)};
}

ComparisonReport check_normalization(const Model& model, const InitialSpectrum& spectrum,
                                     int order) {
  const SupportIntegral r = integrate_density(model, spectrum, support_gauss_nodes(model, order));
  return make_report("normalization", std::abs(r.value - 1.0), 1e-2, 0,
                     {{"integral", r.value},
                      {"order", order},
                      {"shell_mass", r.shell_mass},
                      {"skipped_area", r.skipped_area}});
}

Eigen::ArrayXXd analytic_bin_masses(const Model& model, const InitialSpectrum& spectrum,
                                    int bins, int n_psi, int n_theta) {
  if (bins < 1) throw ParameterError("bins must be positive");
  Eigen::ArrayXXd mass = Eigen::ArrayXXd::Zero(bins, bins);
  Eigen::ArrayXXd skipped = Eigen::ArrayXXd::Zero(bins, bins);
  const double scale = 1.0 / (kTwoPi * kTwoPi);
  for (const SupportNode& n : support_midpoint_nodes(model, n_psi, n_theta)) {
    const int i = bin_of(n.v.v1, bins);
    const int j = bin_of(n.v.v2, bins);
    const std::optional<double> f = try_density(model, spectrum, n.v);
    if (f) mass(i, j) += *f * scale * n.weight;
    else skipped(i, j) += n.weight;
  }
  // Declined nodes sit in the boundary shell; their share of the missing mass
  // goes to the bins they fell in.
  const double lost = skipped.sum();
  if (lost > 0.0) mass += std::max(0.0, 1.0 - mass.sum()) * skipped / lost;
  return mass;
}

Eigen::ArrayXXd empirical_bin_masses(const PositionDistribution& dist, int bins) {
  if (bins < 1) throw ParameterError("bins must be positive");
  const std::int64_t t = dist.time();
  if (t < 1) throw ParameterError("empirical bins need t >= 1");
  auto index = [&](int x) {
    const std::int64_t num = (static_cast<std::int64_t>(x) + t) * bins;
    const std::int64_t den = 2 * t;
    std::int64_t i = num >= 0 ? num / den : -((-num + den - 1) / den);
    if (num % den == 0 && i > 0) --i;
    return static_cast<int>(std::clamp<std::int64_t>(i, 0, bins - 1));
  };
  Eigen::ArrayXXd mass = Eigen::ArrayXXd::Zero(bins, bins);
  const Window& w = dist.window();
  for (int r = 0; r < w.rows(); ++r) {
    for (int c = 0; c < w.cols(); ++c) {
      const double p = dist.weights()(r, c);
      if (p != 0.0) mass(index(w.x1_min + r), index(w.x2_min + c)) += p;
    }
  }
  return mass;
}

std::vector<ComparisonReport> check_weak_limit(const Model& model,
                                               const InitialSpectrum& spectrum,
                                               const std::vector<PositionDistribution>& dists,
                                               int bins) {
  if (dists.empty()) throw ParameterError("weak-limit check needs at least one time");
  const Eigen::ArrayXXd analytic = analytic_bin_masses(model, spectrum, bins, 256, 512);
  json per_t = json::array();
  std::vector<double> l1;
  for (const PositionDistribution& d : dists) {
    if (d.time() < 50) throw ParameterError("weak-limit check needs t >= 50");
    l1.push_back((empirical_bin_masses(d, bins) - analytic).abs().sum());
    per_t.push_back({{"t", d.time()}, {"l1", l1.back()}});
  }
  double rise = -kInf;
  for (std::size_t i = 1; i < l1.size(); ++i) rise = std::max(rise, l1[i] - l1[i - 1]);
  if (l1.size() < 2) rise = 0.0;

  const PositionDistribution& last = dists.back();
  const double t = static_cast<double>(last.time());
  double outside = 0.0;
  const Window& w = last.window();
  for (int r = 0; r < w.rows(); ++r) {
    for (int c = 0; c < w.cols(); ++c) {
      const double p = last.weights()(r, c);
      if (p == 0.0) continue;
      const VelocityPoint v{(w.x1_min + r) / t / 1.05, (w.x2_min + c) / t / 1.05};
      if (support_contains(model, v) == SupportRegion::Outside) outside += p;
    }
  }
  json d{{"bins", bins}, {"analytic_total", analytic.sum()}, {"per_time", per_t}};
  return {make_report("weak_limit_l1", l1.back(), 0.1, 0, d),
          make_report("weak_limit_decreasing", rise, 0.0, 0, d),
          make_report("weak_limit_outside", outside, 0.02, 0,
                      {{"t", last.time()}, {"margin", 0.05}})};
}

std::vector<CharTriple> char_function_triples(const Model& model,
                                              const InitialSpectrum& spectrum,
                                              const PositionDistribution& dist,
                                              const std::vector<Eigen::Vector2d>& xis,
                                              int grid_n, int order) {
  const std::vector<SupportNode> nodes = support_gauss_nodes(model, order);
  std::vector<double> fw(nodes.size(), 0.0);
  const double scale = 1.0 / (kTwoPi * kTwoPi);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::optional<double> f = try_density(model, spectrum, nodes[i].v);
    if (f) fw[i] = *f * scale * nodes[i].weight;
  }
  const double t = static_cast<double>(dist.time());
  const Window& w = dist.window();
  std::vector<CharTriple> out;
  for (const Eigen::Vector2d& xi : xis) {
    CharTriple c{xi, 0.0, 0.0, 0.0};
    for (int r = 0; r < w.rows(); ++r) {
      for (int col = 0; col < w.cols(); ++col) {
        const double p = dist.weights()(r, col);
        if (p == 0.0) continue;
        c.empirical += p * std::polar(1.0, (xi(0) * (w.x1_min + r) + xi(1) * (w.x2_min + col)) / t);
      }
    }
    c.spectral = numeric_char_function(model, spectrum, xi, grid_n).value;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      c.density += fw[i] * std::polar(1.0, xi(0) * nodes[i].v.v1 + xi(1) * nodes[i].v.v2);
    }
    out.push_back(c);
  }
  return out;
}

std::vector<ComparisonReport> check_char_function(const Model& model,
                                                  const InitialSpectrum& spectrum,
                                                  const PositionDistribution& dist,
                                                  const std::vector<Eigen::Vector2d>& xis) {
  for (const Eigen::Vector2d& xi : xis) {
    if (xi.cwiseAbs().maxCoeff() > 3.0) throw ParameterError("|xi| entries must be <= 3");
  }
  const std::vector<CharTriple> triples =
      char_function_triples(model, spectrum, dist, xis, 256, 48);
  double pairwise = 0.0, quad = 0.0;
  json rows = json::array();
  for (const CharTriple& c : triples) {
    const double sd = std::abs(c.spectral - c.density);
    pairwise = std::max({pairwise, std::abs(c.empirical - c.spectral),
                         std::abs(c.empirical - c.density), sd});
    quad = std::max(quad, sd);
    rows.push_back({{"xi", {c.xi(0), c.xi(1)}},
                    {"empirical", {c.empirical.real(), c.empirical.imag()}},
                    {"spectral", {c.spectral.real(), c.spectral.imag()}},
                    {"density", {c.density.real(), c.density.imag()}}});
  }
  json d{{"t", dist.time()}, {"values", rows}};
  return {make_report("char_function", pairwise, 5e-2, 0, d),
          make_report("char_function_quadratures", quad, 1e-2, 0, d)};
}

std::vector<ComparisonReport> check_degenerate(const Model& model, int grid_n,
                                               std::uint64_t seed) {
  const DerivedConstants& dc = model.constants();
  if (!dc.degenerate) throw ParameterError("degenerate check needs a + b = 1");
  const double a = dc.a;
  double level = 0.0, inverse = 0.0;
  long long mismatch = 0;
  for (int i = 0; i < grid_n; ++i) {
    for (int j = 0; j < grid_n; ++j) {
      const VelocityPoint v{-1.0 + (2.0 * i + 1.0) / grid_n, -1.0 + (2.0 * j + 1.0) / grid_n};
      const double s = v.v1 + v.v2;
      const double d = v.v1 - v.v2;
      const double single = s * s / (4.0 * a) + d * d / (4.0 * dc.b);
      level = std::max(level, std::abs(support_level(model, v) - single));
      const SupportRegion region = support_contains(model, v);
      if (region == SupportRegion::Boundary) continue;
      if ((region == SupportRegion::Inside) != reference_ellipse_grover(a, v)) ++mismatch;
      if (region == SupportRegion::Inside) {
        const double A = (1.0 - v.v1 * v.v1) * (1.0 - v.v2 * v.v2);
        for (RootSign sg : {RootSign::Plus, RootSign::Minus}) {
          inverse = std::max(inverse, std::abs(jacobian_inverse(model, v, sg) * A - 1.0));
        }
      }
    }
  }
  Sampler rng(seed);
  double forward = 0.0;
  for (int used = 0; used < 1000;) {
    const Wavenumber k = rng.wavenumber();
    if (!interior_k(model, k, 1e-6)) continue;
    const double j = jacobian_forward(model, k);
    if (j <= 1e-4) continue;
    ++used;
    const VelocityPoint v = forward_map(model, k);
    const double A = (1.0 - v.v1 * v.v1) * (1.0 - v.v2 * v.v2);
    forward = std::max(forward, std::abs(j / A - 1.0));
  }
  json d{{"grid_n", grid_n}, {"a", a}, {"b", dc.b}};
  return {make_report("degenerate_support", level, 1e-12, 0, d),
          make_report("degenerate_membership", static_cast<double>(mismatch), 0.0, 0, d),
          make_report("degenerate_jacobian_form", inverse, 1e-12, 0, d),
          make_report("degenerate_jacobian_forward", forward, 1e-8, seed, d)};
}

const std::vector<std::string>& suite_check_names() {
  static const std::vector<std::string> names{
      "golden_step", "unitarity",   "lattice_vs_spectral", "spectral_invariants",
      "derived_constants", "jacobian", "roundtrip",         "branch_count",
      "support",     "normalization", "weak_limit",        "char_function",
      "degenerate"};
  return names;
}

std::vector<ComparisonReport> run_suite(const Model& model, const Spinor& spinor,
                                        const SuiteOptions& options) {
  for (const std::string& s : options.subset) {
    const auto& names = suite_check_names();
    if (std::find(names.begin(), names.end(), s) == names.end()) {
      throw ParameterError("unknown check: " + s);
    }
  }
  auto wanted = [&](const std::string& name) {
    return options.subset.empty() ||
           std::find(options.subset.begin(), options.subset.end(), name) != options.subset.end();
  };
  const LatticeState state0 = initial_state_delta(spinor);
  const InitialSpectrum spectrum = fourier_initial(state0);
  const std::uint64_t seed = options.seed;
  std::vector<ComparisonReport> out;
  auto add = [&](std::vector<ComparisonReport> rs) {
    for (auto& r : rs) out.push_back(std::move(r));
  };

  // One evolution serves unitarity, weak-limit and characteristic-function checks.
  std::set<std::int64_t> snap;
  if (wanted("weak_limit")) snap.insert(options.times.begin(), options.times.end());
  if (wanted("char_function")) snap.insert(options.char_time);
  std::int64_t unit_t = options.times.empty() ? 500 : *std::max_element(options.times.begin(),
                                                                       options.times.end());
  if (wanted("unitarity")) snap.insert(unit_t);
  std::map<std::int64_t, PositionDistribution> dists;
  double norm_drift = 0.0;
  if (!snap.empty()) {
    LatticeState s = state0;
    for (std::int64_t t : snap) {
      s = evolve(model, std::move(s), t - s.time());
      dists.emplace(t, position_distribution(s));
      if (t == unit_t) norm_drift = std::abs(s.norm_squared() - 1.0);
    }
  }

  if (wanted("golden_step")) out.push_back(check_golden_step());
  if (wanted("unitarity")) out.push_back(make_report("unitarity", norm_drift, 1e-10, 0, {{"t", unit_t}}));
  if (wanted("lattice_vs_spectral")) out.push_back(check_lattice_vs_spectral(model, state0, 20));
  if (wanted("spectral_invariants")) add(check_spectral_invariants(model, 10000, seed + 1));
  if (wanted("derived_constants")) out.push_back(check_derived_constants(model));
  if (wanted("jacobian")) add(check_jacobian(model, 1000, seed + 2));
  if (wanted("roundtrip")) {
    out.push_back(check_roundtrip(model, 10000, seed + 3));
    ComparisonReport r = check_roundtrip(phased_companion(model), 10000, seed + 4);
    r.name = "roundtrip_phased";
    out.push_back(std::move(r));
  }
  if (wanted("branch_count")) out.push_back(check_branch_count(model, 1000, seed + 5));
  if (wanted("support")) add(check_support(model, 512));
  if (wanted("normalization")) out.push_back(check_normalization(model, spectrum, 24));
  if (wanted("weak_limit")) {
    std::vector<PositionDistribution> ds;
    for (std::int64_t t : options.times) ds.push_back(dists.at(t));
    add(check_weak_limit(model, spectrum, ds, options.bins));
  }
  if (wanted("char_function")) {
    add(check_char_function(model, spectrum, dists.at(options.char_time), options.xis));
  }
  if (wanted("degenerate")) add(check_degenerate(degenerate_companion(model), 200, seed + 6));

  for (ComparisonReport& r : out) {
    r.tolerance *= options.tolerance_scale;
    r.passed = r.metric <= r.tolerance;
  }
  return out;
}

std::string summary_table(const std::vector<ComparisonReport>& reports) {
  std::ostringstream os;
  os << std::left << std::setw(30) << "check" << std::setw(14) << "metric" << std::setw(14)
     << "tolerance" << "result\n";
  for (const ComparisonReport& r : reports) {
    os << std::left << std::setw(30) << r.name << std::setw(14) << std::setprecision(6)
       << r.metric << std::setw(14) << r.tolerance << (r.passed ? "PASS" : "FAIL") << '\n';
  }
  return os.str();
}

}  // namespace qw2d
