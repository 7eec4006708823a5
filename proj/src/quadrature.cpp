#include "qw2d/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "qw2d/angles.hpp"
#include "qw2d/errors.hpp"
#include "qw2d/limit.hpp"

namespace qw2d {

namespace {

double rho_max(const DerivedConstants& dc, double psi) {
  const double c2 = std::cos(psi) * std::cos(psi);
  const double s2 = 1.0 - c2;
  const double qr = c2 / dc.axis_r1 + s2 / dc.axis_r2;
  const double qt = c2 / dc.axis_t1 + s2 / dc.axis_t2;
  return 1.0 / std::sqrt(std::max(qr, qt));
}

// Angles where the two ellipses cross, plus the axes.
std::vector<double> psi_breaks(const DerivedConstants& dc) {
  double corner = kPi / 4.0;
  if (!dc.degenerate) {
    const double num = 1.0 / dc.axis_t1 - 1.0 / dc.axis_r1;
    const double den = 1.0 / dc.axis_r2 - 1.0 / dc.axis_t2;
    if (num > 0.0 && den > 0.0) corner = std::atan(std::sqrt(num / den));
  }
  std::vector<double> b;
  for (int i = 0; i < 4; ++i) {
    const double base = i * kPi / 2.0;
    b.push_back(base);
    b.push_back(i % 2 == 0 ? base + corner : base + kPi / 2.0 - corner);
  }
  b.push_back(kTwoPi);
  return b;
}

// Smoothstep in psi, flat at both ends of each piece.
template <typename Emit>
void polar_nodes(const Model& model, const std::vector<double>& t_psi,
                 const std::vector<double>& w_psi, const std::vector<double>& t_theta,
                 const std::vector<double>& w_theta, Emit&& emit) {
  const DerivedConstants& dc = model.constants();
  const std::vector<double> br = psi_breaks(dc);
  for (std::size_t piece = 0; piece + 1 < br.size(); ++piece) {
    const double lo = br[piece];
    const double hi = br[piece + 1];
    const double span = hi - lo;
    if (span <= 0.0) continue;
    for (std::size_t i = 0; i < t_psi.size(); ++i) {
      const double t = t_psi[i];
      const double psi = lo + span * t * t * (3.0 - 2.0 * t);
      const double dpsi = span * 6.0 * t * (1.0 - t) * w_psi[i];
      const double rm = rho_max(dc, psi);
      const double cp = std::cos(psi);
      const double sp = std::sin(psi);
      for (std::size_t j = 0; j < t_theta.size(); ++j) {
        const double theta = 0.5 * kPi * t_theta[j];
        const double dtheta = 0.5 * kPi * w_theta[j];
        const double rho = rm * std::sin(theta);
        const double w = rm * rm * std::sin(theta) * std::cos(theta) * dtheta * dpsi;
        emit(SupportNode{to_v({rho * cp, rho * sp}), w});
      }
    }
  }
}

std::vector<double> midpoints(int n) {
  std::vector<double> t(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) t[i] = (i + 0.5) / n;
  return t;
}

}  // namespace

GaussRule gauss_legendre(int order) {
  if (order < 1) throw ParameterError("quadrature order must be positive");
  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int i = 0; i < order; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = 0.5 * (1.0 - x);
    rule.weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

std::vector<SupportNode> support_gauss_nodes(const Model& model, int order) {
  const GaussRule g = gauss_legendre(order);
  std::vector<SupportNode> out;
  out.reserve(8 * g.nodes.size() * g.nodes.size());
  polar_nodes(model, g.nodes, g.weights, g.nodes, g.weights,
              [&](const SupportNode& n) { out.push_back(n); });
  return out;
}

std::vector<SupportNode> support_midpoint_nodes(const Model& model, int n_psi, int n_theta) {
  if (n_psi < 1 || n_theta < 1) throw ParameterError("node counts must be positive");
  const std::vector<double> tp = midpoints(n_psi);
  const std::vector<double> tt = midpoints(n_theta);
  const std::vector<double> wp(tp.size(), 1.0 / n_psi);
  const std::vector<double> wt(tt.size(), 1.0 / n_theta);
  std::vector<SupportNode> out;
  out.reserve(8 * tp.size() * tt.size());
  polar_nodes(model, tp, wp, tt, wt, [&](const SupportNode& n) { out.push_back(n); });
  return out;
}

SupportIntegral integrate_density(const Model& model, const InitialSpectrum& spectrum,
                                  const std::vector<SupportNode>& nodes) {
  SupportIntegral out;
  const double scale = 1.0 / (kTwoPi * kTwoPi);
  for (const SupportNode& n : nodes) {
    const std::optional<double> f = try_density(model, spectrum, n.v);
    if (!f) {
      out.skipped_area += n.weight;
      ++out.skipped;
      continue;
    }
    const double mass = *f * scale * n.weight;
    out.value += mass;
    const JacobianTerms j = jacobian_terms(model, n.v);
    if (j.E_R * j.E_T < kShellReportProduct) out.shell_mass += mass;
  }
  return out;
}

std::vector<VelocityPoint> support_boundary(const Model& model, int samples) {
  if (samples < 3) throw ParameterError("boundary needs at least 3 samples");
  const DerivedConstants& dc = model.constants();
  std::vector<VelocityPoint> pts;
  pts.reserve(static_cast<std::size_t>(samples) + 1);
  for (int i = 0; i <= samples; ++i) {
    const double psi = kTwoPi * i / samples;
    const double r = rho_max(dc, psi);
    pts.push_back(to_v({r * std::cos(psi), r * std::sin(psi)}));
  }
  return pts;
}

double support_area(const Model& model) {
  double area = 0.0;
  for (const SupportNode& n : support_gauss_nodes(model, 24)) area += n.weight;
  return area;
}

}  // namespace qw2d
