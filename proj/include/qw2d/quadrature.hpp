#pragma once

#include <vector>

#include "qw2d/model.hpp"
#include "qw2d/spectral.hpp"

namespace qw2d {

// Gauss-Legendre nodes and weights on [0, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussRule gauss_legendre(int order);

// A quadrature node in the velocity plane; weight carries the area element.
struct SupportNode {
  VelocityPoint v;
  double weight = 0.0;
};

// Polar nodes rho = rho_max(psi) sin(theta) over the support, split at the
// ellipse corners and the axes, with endpoint smoothing in psi. The weights
// sum to the support area.
std::vector<SupportNode> support_gauss_nodes(const Model& model, int order);

// Same map with n_psi x n_theta midpoint nodes per angular piece.
std::vector<SupportNode> support_midpoint_nodes(const Model& model, int n_psi, int n_theta);

inline constexpr double kShellReportProduct = 1e-4;

struct SupportIntegral {
  double value = 0.0;
  double shell_mass = 0.0;  // part of value from nodes with E_R E_T < 1e-4
  double skipped_area = 0.0;  // nodes the density declined
  long long skipped = 0;
};

// Integral of f(v)/(2 pi)^2 over the support using the given nodes.
SupportIntegral integrate_density(const Model& model, const InitialSpectrum& spectrum,
                                  const std::vector<SupportNode>& nodes);

// Closed polyline of the support boundary with `samples` segments.
std::vector<VelocityPoint> support_boundary(const Model& model, int samples);

double support_area(const Model& model);

}  // namespace qw2d
