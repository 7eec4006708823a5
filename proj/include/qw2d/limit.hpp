#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qw2d/model.hpp"
#include "qw2d/spectral.hpp"

namespace qw2d {

// u = (1/sqrt 2) [[1, 1], [1, -1]] v. The transform is its own inverse.
struct UPoint {
  double u1 = 0.0;
  double u2 = 0.0;
};

UPoint to_u(const VelocityPoint& v);
VelocityPoint to_v(const UPoint& u);

// Ribbon: c2 = kappa c1 with |kappa| <= 1. Twist: c1 = gamma c2 with |gamma| <= 1.
enum class Shape { Ribbon, Twist };

// Which root of A x^2 - 2 B x + C = 0 (x = 1 - tau^2) a branch uses; plus pairs
// with |J|_+^{-1}, minus with |J|_-^{-1}.
enum class RootSign { Plus, Minus };

// Even C-region index m pairs with the plus root, odd with the minus root.
constexpr RootSign root_sign_of(int m) { return (m % 2 == 0) ? RootSign::Plus : RootSign::Minus; }

// One preimage of the inverse map chain: L-region n in 1..8, C-region m in
// 1..4, shape s (ignored for odd m), band p in {1, 2}.
struct Branch {
  int n = 1;
  int m = 1;
  Shape s = Shape::Ribbon;
  int p = 1;

  friend bool operator==(const Branch&, const Branch&) = default;
};

// Composite k -> l -> c -> u -> v; identical to group_velocity(model, 1, k).
VelocityPoint forward_map(const Model& model, const Wavenumber& k);

enum class SupportRegion { Inside, Boundary, Outside };

inline constexpr double kSupportTolerance = 1e-9;

// max over the two ellipses of u1^2/axis_1 + u2^2/axis_2; the support is
// where this is <= 1.
double support_level(const Model& model, const VelocityPoint& v);

// Ellipse-intersection membership, or the single ellipse for a + b = 1.
SupportRegion support_contains(const Model& model, const VelocityPoint& v);

struct JacobianTerms {
  double A = 0.0;  // (1 - v1^2)(1 - v2^2)
  double B = 0.0;
  double C_term = 0.0;  // D_J
  double E_R = 0.0;     // ribbon-ellipse residual
  double E_T = 0.0;     // twist-ellipse residual
  double D_quarter = 0.0;  // 4 a^2 b^2 E_R E_T
};

JacobianTerms jacobian_terms(const Model& model, const VelocityPoint& v);

// E_R E_T below this is treated as the boundary shell.
inline constexpr double kShellProductTolerance = 1e-14;

// |J|_{+-}^{-1}(v). Degenerate models return 1/((1 - v1^2)(1 - v2^2)) for
// either sign. Throws DomainError unless v lies strictly inside the support.
double jacobian_inverse(const Model& model, const VelocityPoint& v, RootSign sign);

// |det dv/dk| at k. Throws DegeneracyError where tau^2 = 1.
double jacobian_forward(const Model& model, const Wavenumber& k);

// Functions of the sweep ratio; their magnitudes at j_+ are the squared
// semi-axes of the support ellipses.
double f_r1(const Model& model, double kappa);
double f_r2(const Model& model, double kappa);
double f_t1(const Model& model, double gamma);
double f_t2(const Model& model, double gamma);

// Residual of the conic traced by the image of c2 = kappa c1 (Ribbon) or
// c1 = gamma c2 (Twist). Zero iff u lies on it.
double conic_residual(const Model& model, double ratio, const UPoint& u, Shape shape);

enum class ConicKind { CrossedLines, Hyperbola, ParallelLines, Ellipse };

ConicKind conic_kind(const Model& model, double ratio, Shape shape);

// kappa_{+-}(u) for Ribbon, gamma_{+-}(u) for Twist, as closed-form functions.
// Throws DomainError when u is outside U(R) (resp. U(T)).
double kappa_gamma(const Model& model, const UPoint& u, Shape shape, RootSign sign);

// The sweep ratio (c2/c1 for Ribbon, c1/c2 for Twist) of the branch with
// C-region m. Ribbon uses kappa_+ on even m; Twist uses gamma_- on even m.
double branch_ratio(const Model& model, const UPoint& u, int m, Shape shape);

// Region labels of k. p is always 1. Region boundaries go to the lowest index.
Branch classify_branch(const Model& model, const Wavenumber& k);

// Preimage of +v (p = 1) or -v (p = 2) on the given branch, or nullopt when
// the branch has no preimage for this point (wrong quadrant, wrong shape, or
// an empty root). Throws DomainError when v is not strictly inside the
// support and NumericError when |c_i| spills past 1 + 1e-12.
std::optional<Wavenumber> inverse_map(const Model& model, const VelocityPoint& v,
                                      const Branch& branch);

inline constexpr double kForwardConsistencyTolerance = 1e-9;
inline constexpr double kDegenerateDedupDistance = 1e-7;

struct DensityTerm {
  Branch branch;
  Wavenumber k;
  double band_weight = 0.0;       // P_p(k)
  double jacobian_inverse = 0.0;  // |J|^{-1} for the branch's root
};

// Every forward-consistent preimage contributing to f(v).
std::vector<DensityTerm> density_terms(const Model& model, const InitialSpectrum& spectrum,
                                       const VelocityPoint& v);

// f(v); the probability density of the limit is f(v)/(2 pi)^2.
double density(const Model& model, const InitialSpectrum& spectrum, const VelocityPoint& v);

// nullopt in the boundary shell or outside the support instead of throwing.
std::optional<double> try_density(const Model& model, const InitialSpectrum& spectrum,
                                  const VelocityPoint& v);

struct BranchWeights {
  double w_plus = 0.0;
  double w_minus = 0.0;
};

// w_+ and w_- summed from the enumerated preimages.
BranchWeights enumerated_weights(const Model& model, const InitialSpectrum& spectrum,
                                 const VelocityPoint& v);

// w_+ and w_- assembled from the printed S_1..S_4 region tables. A soft
// cross-check only; the enumeration above is authoritative.
BranchWeights region_table_weights(const Model& model, const InitialSpectrum& spectrum,
                                   const VelocityPoint& v);

// Region S_1..S_4 of v (lowest index on ties).
int s_region(const VelocityPoint& v);

// One-dimensional reference density sqrt(1 - r^2) / (pi (1 - v^2) sqrt(r^2 - v^2)).
double konno_density(double v, double r);

// Membership in (v1 + v2)^2/(4a) + (v1 - v2)^2/(4(1 - a)) < 1.
bool reference_ellipse_grover(double a_param, const VelocityPoint& v);

}  // namespace qw2d
