#include "qw2d/limit.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "qw2d/angles.hpp"
#include "qw2d/errors.hpp"

namespace qw2d {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

double sgn_or_plus(double x) { return x < 0.0 ? -1.0 : 1.0; }

// Closed squares of the windmill fundamental domain in the l-plane.
struct Square {
  double lo1, hi1, lo2, hi2;
};

constexpr std::array<Square, 8> kWindmill{{
    {0.0, kPi, 0.0, kPi},
    {-kPi, 0.0, 0.0, kPi},
    {-kPi, 0.0, -kPi, 0.0},
    {0.0, kPi, -kPi, 0.0},
    {-kTwoPi, -kPi, 0.0, kPi},
    {-kPi, 0.0, -kTwoPi, -kPi},
    {kPi, kTwoPi, -kPi, 0.0},
    {0.0, kPi, kPi, kTwoPi},
}};

// Required signs of (u1, u2) for region n, indexed by (n - 1) % 4.
constexpr std::array<std::array<double, 2>, 4> kQuadrantSigns{{
    {-1.0, -1.0},
    {1.0, -1.0},
    {1.0, 1.0},
    {-1.0, 1.0},
}};

double clamp_unit(double c) {
  if (std::abs(c) > 1.0 + 1e-12) throw NumericError("cosine outside [-1, 1] beyond allowance");
  return std::clamp(c, -1.0, 1.0);
}

std::pair<double, double> raw_l(const Model& model, const Wavenumber& k) {
  const CoinParameters& p = model.params();
  return {k.k2 + k.k1 + p.alpha[1] + p.alpha[0], k.k2 - k.k1 + p.beta[1] - p.beta[0]};
}

// Everything the branch solver needs about one target point.
struct PreimageContext {
  UPoint u;
  JacobianTerms jt;
  double root_plus = 0.0;
  double root_minus = 0.0;
  double kappa_sign = 1.0;
  double gamma_sign = 1.0;
  Shape actual = Shape::Ribbon;
};

PreimageContext make_context(const Model& model, const VelocityPoint& target) {
  if (support_contains(model, target) != SupportRegion::Inside) {
    throw DomainError("velocity point is not strictly inside the support");
  }
  const DerivedConstants& dc = model.constants();
  const double a = dc.a;
  const double b = dc.b;
  PreimageContext ctx;
  ctx.u = to_u(target);
  ctx.jt = jacobian_terms(model, target);
  const double sq = std::sqrt(std::max(0.0, ctx.jt.D_quarter));
  ctx.root_plus = (ctx.jt.B + sq) / ctx.jt.A;
  ctx.root_minus = ctx.jt.C_term / (ctx.jt.B + sq);
  const double u1s = ctx.u.u1 * ctx.u.u1;
  const double u2s = ctx.u.u2 * ctx.u.u2;
  ctx.kappa_sign = sgn_or_plus(2.0 * b * b - b * b * u1s - (1.0 - a * a) * u2s);
  ctx.gamma_sign = sgn_or_plus(2.0 * a * a - (1.0 - b * b) * u1s - a * a * u2s);
  ctx.actual = (a * std::abs(ctx.u.u2) >= b * std::abs(ctx.u.u1)) ? Shape::Ribbon : Shape::Twist;
  return ctx;
}

std::optional<Wavenumber> solve_branch(const Model& model, const PreimageContext& ctx,
                                       const Branch& br) {
  if (br.n < 1 || br.n > 8 || br.m < 1 || br.m > 4) {
    throw ParameterError("branch indices out of range");
  }
  const DerivedConstants& dc = model.constants();
  const bool even = (br.m % 2 == 0);
  if (dc.degenerate && !even) return std::nullopt;

  const auto& q = kQuadrantSigns[(br.n - 1) % 4];
  if (ctx.u.u1 != 0.0 && sgn_or_plus(ctx.u.u1) != q[0]) return std::nullopt;
  if (ctx.u.u2 != 0.0 && sgn_or_plus(ctx.u.u2) != q[1]) return std::nullopt;
  if (even && br.s != ctx.actual) return std::nullopt;

  const double root = even ? ctx.root_plus : ctx.root_minus;
  if (!(root > 0.0)) return std::nullopt;
  const double c1s = 1.0 - root * ctx.u.u1 * ctx.u.u1 / (2.0 * dc.a * dc.a);
  const double c2s = 1.0 - root * ctx.u.u2 * ctx.u.u2 / (2.0 * dc.b * dc.b);
  if (c1s < -1e-12 || c2s < -1e-12) return std::nullopt;
  const double ac1 = std::sqrt(std::max(0.0, c1s));
  const double ac2 = std::sqrt(std::max(0.0, c2s));

  double g1 = 1.0, g2 = 1.0;
  switch (br.m) {
    case 1: g1 = -1.0; g2 = 1.0; break;
    case 3: g1 = 1.0; g2 = -1.0; break;
    case 2:
      if (br.s == Shape::Ribbon) { g1 = -1.0; g2 = -ctx.kappa_sign; }
      else { g1 = -ctx.gamma_sign; g2 = -1.0; }
      break;
    default:
      if (br.s == Shape::Ribbon) { g1 = 1.0; g2 = ctx.kappa_sign; }
      else { g1 = ctx.gamma_sign; g2 = 1.0; }
      break;
  }
  const double A1 = std::acos(clamp_unit(g1 * ac1));
  const double A2 = std::acos(clamp_unit(g2 * ac2));

  double l1 = 0.0, l2 = 0.0;
  switch (br.n) {
    case 1: l1 = A1; l2 = A2; break;
    case 2: l1 = -A1; l2 = A2; break;
    case 3: l1 = -A1; l2 = -A2; break;
    case 4: l1 = A1; l2 = -A2; break;
    case 5: l1 = A1 - kTwoPi; l2 = A2; break;
    case 6: l1 = -A1; l2 = A2 - kTwoPi; break;
    case 7: l1 = -A1 + kTwoPi; l2 = -A2; break;
    default: l1 = A1; l2 = -A2 + kTwoPi; break;
  }
  const CoinParameters& p = model.params();
  const double off1 = p.alpha[0] + p.alpha[1];
  const double off2 = p.beta[1] - p.beta[0];
  const double k1 = 0.5 * ((l1 - off1) - (l2 - off2));
  const double k2 = 0.5 * ((l1 - off1) + (l2 - off2));
  return Wavenumber::canonical(k1, k2);
}

bool forward_consistent(const Model& model, const Wavenumber& k, const VelocityPoint& target) {
  const TauTerms t = tau_of(model, k);
  if (1.0 - t.tau * t.tau <= kSpectralDegeneracyTolerance) return false;
  const VelocityPoint w = forward_map(model, k);
  return std::max(std::abs(w.v1 - target.v1), std::abs(w.v2 - target.v2)) <=
         kForwardConsistencyTolerance;
}

// (m, s) combinations; odd m carries no shape.
struct MS {
  int m;
  Shape s;
};
constexpr std::array<MS, 6> kBranchMS{{
    {1, Shape::Ribbon},
    {2, Shape::Ribbon},
    {2, Shape::Twist},
    {3, Shape::Ribbon},
    {4, Shape::Ribbon},
    {4, Shape::Twist},
}};

double band_weight(const Model& model, const InitialSpectrum& spectrum, const Wavenumber& k,
                   int p) {
  const EigenSystem es = eigensystem(model, k);
  const auto [p1, p2] = band_weights(es, spectrum(k));
  return p == 1 ? p1 : p2;
}

}  // namespace

UPoint to_u(const VelocityPoint& v) {
  return {kInvSqrt2 * (v.v1 + v.v2), kInvSqrt2 * (v.v1 - v.v2)};
}

VelocityPoint to_v(const UPoint& u) {
  return {kInvSqrt2 * (u.u1 + u.u2), kInvSqrt2 * (u.u1 - u.u2)};
}

VelocityPoint forward_map(const Model& model, const Wavenumber& k) {
  return group_velocity(model, 1, k);
}

double support_level(const Model& model, const VelocityPoint& v) {
  const DerivedConstants& dc = model.constants();
  const UPoint u = to_u(v);
  const double u1s = u.u1 * u.u1;
  const double u2s = u.u2 * u.u2;
  return std::max(u1s / dc.axis_r1 + u2s / dc.axis_r2, u1s / dc.axis_t1 + u2s / dc.axis_t2);
}

SupportRegion support_contains(const Model& model, const VelocityPoint& v) {
  const double worst = support_level(model, v);
  if (worst <= 1.0 - kSupportTolerance) return SupportRegion::Inside;
  if (worst <= 1.0 + kSupportTolerance) return SupportRegion::Boundary;
  return SupportRegion::Outside;
}

JacobianTerms jacobian_terms(const Model& model, const VelocityPoint& v) {
  const DerivedConstants& dc = model.constants();
  const double a = dc.a;
  const double b = dc.b;
  const UPoint u = to_u(v);
  JacobianTerms j;
  j.A = (1.0 - v.v1 * v.v1) * (1.0 - v.v2 * v.v2);
  j.B = -0.5 * (v.v1 * v.v1 + v.v2 * v.v2) + (a * a - b * b) * v.v1 * v.v2 + 1.0 -
        (a * a + b * b);
  j.C_term = dc.d_j;
  j.E_R = 1.0 - u.u1 * u.u1 / dc.axis_r1 - u.u2 * u.u2 / dc.axis_r2;
  j.E_T = 1.0 - u.u1 * u.u1 / dc.axis_t1 - u.u2 * u.u2 / dc.axis_t2;
  j.D_quarter = 4.0 * a * a * b * b * j.E_R * j.E_T;
  return j;
}

double jacobian_inverse(const Model& model, const VelocityPoint& v, RootSign sign) {
  if (support_contains(model, v) != SupportRegion::Inside) {
    throw DomainError("inverse Jacobian requested outside the open support");
  }
  const JacobianTerms j = jacobian_terms(model, v);
  if (model.constants().degenerate) return 1.0 / j.A;
  const double prod = j.E_R * j.E_T;
  if (prod < kShellProductTolerance) {
    throw DomainError("inverse Jacobian requested in the boundary shell");
  }
  const double ab = model.constants().a * model.constants().b;
  const double r = std::sqrt(prod);
  if (sign == RootSign::Plus) return (j.B + 2.0 * ab * r) / (4.0 * ab * j.A * r);
  return j.C_term / (4.0 * ab * r * (j.B + 2.0 * ab * r));
}

double jacobian_forward(const Model& model, const Wavenumber& k) {
  const TauTerms t = tau_of(model, k);
  const double one_minus = 1.0 - t.tau * t.tau;
  if (one_minus <= kSpectralDegeneracyTolerance) {
    throw DegeneracyError("Jacobian undefined where tau^2 = 1");
  }
  const double a = model.constants().a;
  const double b = model.constants().b;
  const double phi =
      a * b * t.c2 * t.c2 + (1.0 - a * a - b * b) * t.c1 * t.c2 + a * b * t.c1 * t.c1;
  return 4.0 * a * b * std::abs(phi) / (one_minus * one_minus);
}

double f_r1(const Model& model, double kappa) {
  const double a = model.constants().a;
  const double b = model.constants().b;
  const double w = a - b * kappa;
  return 2.0 * a * a * (1.0 - kappa * kappa) / (kappa * kappa - w * w);
}

double f_r2(const Model& model, double kappa) {
  const double a = model.constants().a;
  const double b = model.constants().b;
  const double w = a - b * kappa;
  return 2.0 * b * b * (1.0 - kappa * kappa) / (1.0 - w * w);
}

double f_t1(const Model& model, double gamma) {
  const double a = model.constants().a;
  const double b = model.constants().b;
  const double w = a * gamma - b;
  return 2.0 * a * a * (1.0 - gamma * gamma) / (1.0 - w * w);
}

double f_t2(const Model& model, double gamma) {
  const double a = model.constants().a;
  const double b = model.constants().b;
  const double w = a * gamma - b;
  return 2.0 * b * b * (1.0 - gamma * gamma) / (gamma * gamma - w * w);
}

namespace {

// residual = p u1^2 + q u2^2 + r
struct ConicCoefficients {
  double p, q, r;
};

ConicCoefficients conic_coefficients(const Model& model, double x, Shape shape) {
  const double a = model.constants().a;
  const double b = model.constants().b;
  if (shape == Shape::Ribbon) {
    const double w = a - b * x;
    return {-b * b * (x * x - w * w), a * a * (1.0 - w * w), -2.0 * a * a * b * b * (1.0 - x * x)};
  }
  const double w = a * x - b;
  return {-b * b * (1.0 - w * w), a * a * (x * x - w * w), 2.0 * a * a * b * b * (1.0 - x * x)};
}

}  // namespace

double conic_residual(const Model& model, double ratio, const UPoint& u, Shape shape) {
  const ConicCoefficients c = conic_coefficients(model, ratio, shape);
  return c.p * u.u1 * u.u1 + c.q * u.u2 * u.u2 + c.r;
}

ConicKind conic_kind(const Model& model, double ratio, Shape shape) {
  constexpr double tol = 1e-12;
  const ConicCoefficients c = conic_coefficients(model, ratio, shape);
  if (std::abs(c.p) <= tol || std::abs(c.q) <= tol) return ConicKind::ParallelLines;
  if (std::abs(c.r) <= tol) return ConicKind::CrossedLines;
  return (c.p * c.q < 0.0) ? ConicKind::Hyperbola : ConicKind::Ellipse;
}

double kappa_gamma(const Model& model, const UPoint& u, Shape shape, RootSign sign) {
  const DerivedConstants& dc = model.constants();
  const double a = dc.a;
  const double b = dc.b;
  const double tol = 1e-12;
  const bool in_sector = (shape == Shape::Ribbon)
                             ? a * std::abs(u.u2) >= b * std::abs(u.u1) - tol
                             : a * std::abs(u.u2) <= b * std::abs(u.u1) + tol;
  if (!in_sector || support_contains(model, to_v(u)) == SupportRegion::Outside) {
    throw DomainError("point outside the domain of the sweep ratio");
  }
  const JacobianTerms j = jacobian_terms(model, to_v(u));
  const double sq = std::sqrt(std::max(0.0, j.D_quarter));
  const double s = (sign == RootSign::Plus) ? 1.0 : -1.0;
  const double u1s = u.u1 * u.u1;
  const double u2s = u.u2 * u.u2;
  const double num = b * b * u1s - a * a * u2s + s * sq;
  if (shape == Shape::Ribbon) {
    return (a / b) * num / (2.0 * a * a - (1.0 - b * b) * u1s - a * a * u2s);
  }
  return (b / a) * num / (-2.0 * b * b + b * b * u1s + (1.0 - a * a) * u2s);
}

double branch_ratio(const Model& model, const UPoint& u, int m, Shape shape) {
  const bool even = (m % 2 == 0);
  if (shape == Shape::Ribbon) {
    return kappa_gamma(model, u, shape, even ? RootSign::Plus : RootSign::Minus);
  }
  return kappa_gamma(model, u, shape, even ? RootSign::Minus : RootSign::Plus);
}

Branch classify_branch(const Model& model, const Wavenumber& k) {
  const auto [l1, l2] = raw_l(model, k);
  const double p1 = std::floor((l1 + kPi) / kTwoPi);
  const double p2 = std::floor((l2 + kPi) / kTwoPi);
  const double t1 = l1 - kTwoPi * p1;
  const double t2 = l2 - kTwoPi * p2;
  const bool odd = std::fmod(std::abs(p1 + p2), 2.0) == 1.0;

  Branch br;
  br.n = 0;
  double r1 = t1, r2 = t2;
  for (int n = 1; n <= 8 && br.n == 0; ++n) {
    const Square& sq = kWindmill[n - 1];
    for (int i = -1; i <= 1 && br.n == 0; ++i) {
      for (int j = -1; j <= 1; ++j) {
        if (((i + j) % 2 != 0) != odd) continue;
        const double c1 = t1 + kTwoPi * i;
        const double c2 = t2 + kTwoPi * j;
        if (c1 >= sq.lo1 && c1 <= sq.hi1 && c2 >= sq.lo2 && c2 <= sq.hi2) {
          br.n = n;
          r1 = c1;
          r2 = c2;
          break;
        }
      }
    }
  }
  if (br.n == 0) throw NumericError("wavenumber fell outside every windmill square");

  const double c1 = std::cos(r1);
  const double c2 = std::cos(r2);
  const double j = model.constants().j_plus;
  if (c1 <= j * c2 && c2 >= j * c1) br.m = 1;
  else if (c1 <= j * c2 && c2 <= j * c1) br.m = 2;
  else if (c1 >= j * c2 && c2 <= j * c1) br.m = 3;
  else br.m = 4;
  br.s = (std::abs(c2) <= std::abs(c1)) ? Shape::Ribbon : Shape::Twist;
  br.p = 1;
  return br;
}

std::optional<Wavenumber> inverse_map(const Model& model, const VelocityPoint& v,
                                      const Branch& branch) {
  if (branch.p != 1 && branch.p != 2) throw ParameterError("band index must be 1 or 2");
  const VelocityPoint target = (branch.p == 1) ? v : -v;
  return solve_branch(model, make_context(model, target), branch);
}

std::vector<DensityTerm> density_terms(const Model& model, const InitialSpectrum& spectrum,
                                       const VelocityPoint& v) {
  if (support_contains(model, v) != SupportRegion::Inside) {
    throw DomainError("density requested outside the open support");
  }
  const bool degenerate = model.constants().degenerate;
  const JacobianTerms jt = jacobian_terms(model, v);
  if (!degenerate && jt.E_R * jt.E_T < kShellProductTolerance) {
    throw DomainError("density requested in the boundary shell");
  }
  const double j_plus = jacobian_inverse(model, v, RootSign::Plus);
  const double j_minus = degenerate ? j_plus : jacobian_inverse(model, v, RootSign::Minus);

  std::vector<DensityTerm> terms;
  for (int p = 1; p <= 2; ++p) {
    const VelocityPoint target = (p == 1) ? v : -v;
    const PreimageContext ctx = make_context(model, target);
    for (int n = 1; n <= 8; ++n) {
      for (const MS& ms : kBranchMS) {
        const Branch br{n, ms.m, ms.s, p};
        const std::optional<Wavenumber> k = solve_branch(model, ctx, br);
        if (!k || !forward_consistent(model, *k, target)) continue;
        if (degenerate) {
          const bool dup = std::any_of(terms.begin(), terms.end(), [&](const DensityTerm& t) {
            return t.branch.p == p && wavenumber_distance(t.k, *k) < kDegenerateDedupDistance;
          });
          if (dup) continue;
        }
        DensityTerm term;
        term.branch = br;
        term.k = *k;
        term.band_weight = band_weight(model, spectrum, *k, p);
        term.jacobian_inverse = (ms.m % 2 == 0) ? j_plus : j_minus;
        terms.push_back(term);
      }
    }
  }
  return terms;
}

double density(const Model& model, const InitialSpectrum& spectrum, const VelocityPoint& v) {
  double total = 0.0;
  for (const DensityTerm& t : density_terms(model, spectrum, v)) {
    total += t.band_weight * t.jacobian_inverse;
  }
  return total;
}

std::optional<double> try_density(const Model& model, const InitialSpectrum& spectrum,
                                  const VelocityPoint& v) {
  if (support_contains(model, v) != SupportRegion::Inside) return std::nullopt;
  if (!model.constants().degenerate) {
    const JacobianTerms jt = jacobian_terms(model, v);
    if (jt.E_R * jt.E_T < kShellProductTolerance) return std::nullopt;
  }
  return density(model, spectrum, v);
}

BranchWeights enumerated_weights(const Model& model, const InitialSpectrum& spectrum,
                                 const VelocityPoint& v) {
  BranchWeights w;
  for (const DensityTerm& t : density_terms(model, spectrum, v)) {
    if (t.branch.m % 2 == 0) w.w_plus += t.band_weight;
    else w.w_minus += t.band_weight;
  }
  return w;
}

int s_region(const VelocityPoint& v) {
  const double x = std::abs(v.v1);
  const double y = std::abs(v.v2);
  if (x <= y && v.v1 >= 0.0) return 1;
  if (x >= y && v.v2 >= 0.0) return 2;
  if (x <= y && v.v1 <= 0.0) return 3;
  return 4;
}

BranchWeights region_table_weights(const Model& model, const InitialSpectrum& spectrum,
                                   const VelocityPoint& v) {
  // Base n (n' = 1) for bands 1 and 2 in S_1..S_4; n' = 2 adds 4.
  constexpr std::array<std::array<int, 2>, 4> kBaseN{{{3, 1}, {4, 2}, {1, 3}, {2, 4}}};
  const int s = s_region(v);
  BranchWeights w;
  for (int p = 1; p <= 2; ++p) {
    const VelocityPoint target = (p == 1) ? v : -v;
    const PreimageContext ctx = make_context(model, target);
    for (int shift = 0; shift <= 4; shift += 4) {
      const int n = kBaseN[s - 1][p - 1] + shift;
      for (const MS& ms : kBranchMS) {
        const std::optional<Wavenumber> k = solve_branch(model, ctx, {n, ms.m, ms.s, p});
        if (!k || !forward_consistent(model, *k, target)) continue;
        const double weight = band_weight(model, spectrum, *k, p);
        if (ms.m % 2 == 0) w.w_plus += weight;
        else w.w_minus += weight;
      }
    }
  }
  return w;
}

double konno_density(double v, double r) {
  if (!(r > 0.0 && r < 1.0)) throw ParameterError("Konno parameter r must lie in (0, 1)");
  if (std::abs(v) >= r) return 0.0;
  return std::sqrt(1.0 - r * r) / (kPi * (1.0 - v * v) * std::sqrt(r * r - v * v));
}

bool reference_ellipse_grover(double a_param, const VelocityPoint& v) {
  if (!(a_param > 0.0 && a_param < 1.0)) {
    throw ParameterError("ellipse parameter must lie in (0, 1)");
  }
  const double s = v.v1 + v.v2;
  const double d = v.v1 - v.v2;
  return s * s / (4.0 * a_param) + d * d / (4.0 * (1.0 - a_param)) < 1.0;
}

}  // namespace qw2d
