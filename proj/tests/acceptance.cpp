// One line per acceptance criterion; exit status 1 if any fails.
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "qw2d/limit.hpp"
#include "qw2d/verify.hpp"

using namespace qw2d;

namespace {

const std::map<int, std::vector<std::string>> kCriteria{
    {1, {"golden_step"}},
    {2, {"unitarity"}},
    {3, {"lattice_vs_spectral"}},
    {4, {"eigenvalue_modulus", "eigenvalue_product", "eigenvalue_solver", "group_velocity_fd"}},
    {5, {"derived_constants", "hand_constants"}},
    {6, {"jacobian_fd", "jacobian_branch_match", "jacobian_origin"}},
    {7, {"roundtrip", "roundtrip_phased"}},
    {8, {"branch_count"}},
    {9, {"support_containment", "support_tightness"}},
    {10, {"normalization"}},
    {11, {"weak_limit_l1", "weak_limit_decreasing"}},
    {12, {"char_function", "char_function_quadratures"}},
    {13, {"degenerate_support", "degenerate_membership", "degenerate_jacobian_form",
          "degenerate_jacobian_forward"}},
};

ComparisonReport hand_constants(const Model& m) {
  const DerivedConstants& dc = m.constants();
  const double err = std::max({std::abs(dc.d_j - 0.64), std::abs(dc.j_plus + 1.0 / 9.0),
                               std::abs(dc.axis_r1 - 1.8), std::abs(dc.axis_r2 - 0.2),
                               std::abs(dc.axis_t1 - 0.2), std::abs(dc.axis_t2 - 1.8)});
  return make_report("hand_constants", err, 1e-12);
}

ComparisonReport jacobian_origin(const Model& m) {
  const VelocityPoint o{0.0, 0.0};
  const double plus = jacobian_inverse(m, o, RootSign::Plus);
  const double minus = jacobian_inverse(m, o, RootSign::Minus);
  const double err = std::max(std::abs(plus - 25.0 / 9.0), std::abs(minus - 16.0 / 9.0));
  return make_report("jacobian_origin", err, 1e-9, 0, {{"plus", plus}, {"minus", minus}});
}

}  // namespace

int main() {
  const Model reference(CoinParameters::from_squares(0.9, 0.1));
  Spinor spinor;
  spinor << 1.0, 0.0;

  std::vector<ComparisonReport> reports = run_suite(reference, spinor, SuiteOptions{});
  reports.push_back(hand_constants(reference));
  reports.push_back(jacobian_origin(reference));

  bool all = true;
  for (const auto& [number, names] : kCriteria) {
    bool ok = true;
    std::string detail;
    for (const std::string& name : names) {
      bool found = false;
      for (const ComparisonReport& r : reports) {
        if (r.name != name) continue;
        found = true;
        ok = ok && r.passed;
        char buf[160];
        std::snprintf(buf, sizeof buf, " %s=%.3g/%.3g", name.c_str(), r.metric, r.tolerance);
        detail += buf;
      }
      if (!found) {
        ok = false;
        detail += " " + name + "=missing";
      }
    }
    all = all && ok;
    std::printf("criterion %d: %s%s\n", number, ok ? "PASS" : "FAIL", detail.c_str());
  }
  return all ? 0 : 1;
}
