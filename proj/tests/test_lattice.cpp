#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "qw2d/errors.hpp"
#include "qw2d/lattice.hpp"

using namespace qw2d;
using cd = std::complex<double>;

namespace {

using Site = std::pair<int, int>;
using Field = std::map<Site, Spinor>;

// Walk applied site by site straight from the operator definitions.
Field brute_step(const Model& m, const Field& in) {
  auto coin = [&](const Field& f, int q) {
    Field out;
    for (const auto& [s, v] : f) out[s] = m.coin(q) * v;
    return out;
  };
  auto shift = [](const Field& f, int q) {
    Field out;
    for (const auto& [s, v] : f) {
      Site lo = s, hi = s;
      (q == 1 ? lo.first : lo.second) -= 1;
      (q == 1 ? hi.first : hi.second) += 1;
      if (!out.count(lo)) out[lo] = Spinor::Zero();
      if (!out.count(hi)) out[hi] = Spinor::Zero();
      out[lo](0) += v(0);
      out[hi](1) += v(1);
    }
    return out;
  };
  return shift(coin(shift(coin(in, 1), 1), 2), 2);
}

Spinor spinor(cd x, cd y) {
  Spinor s;
  s << x, y;
  return s;
}

const Model kHadamard(CoinParameters::from_squares(0.5, 0.5));

}  // namespace

TEST_CASE("initial states") {
  const LatticeState s = initial_state_delta(spinor(1.0, 0.0));
  CHECK(s.norm_squared() == 1.0);
  CHECK(s.window().rows() == 1);
  CHECK(s.at(0, 0)(0) == cd(1.0));
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(initial_state_delta(spinor(r, cd(0, r))).norm_squared() - 1.0) < 1e-15);
  CHECK_THROWS_AS(initial_state_delta(spinor(1.0, 1.0)), ParameterError);
  CHECK_THROWS_AS(initial_state({{0, 0, spinor(0.5, 0.0)}}), ParameterError);
}

TEST_CASE("coin on a delta") {
  const LatticeState s = apply_coin(kHadamard, initial_state_delta(spinor(1.0, 0.0)), 1);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(s.at(0, 0)(0) - cd(r)) < 1e-15);
  CHECK(std::abs(s.at(0, 0)(1) - cd(-r)) < 1e-15);
}

TEST_CASE("shift moves components apart") {
  const LatticeState a = apply_shift(initial_state_delta(spinor(1.0, 0.0)), 1);
  CHECK(a.at(-1, 0)(0) == cd(1.0));
  CHECK(a.at(1, 0).squaredNorm() == 0.0);
  const LatticeState b = apply_shift(initial_state_delta(spinor(0.0, 1.0)), 2);
  CHECK(b.at(0, 1)(1) == cd(1.0));
  CHECK(b.at(0, -1).squaredNorm() == 0.0);
}

TEST_CASE("golden step") {
  const PositionDistribution d =
      position_distribution(step(kHadamard, initial_state_delta(spinor(1.0, 0.0))));
  for (int x1 : {-1, 1}) {
    for (int x2 : {-1, 1}) CHECK(std::abs(d.at(x1, x2) - 0.25) < 1e-14);
  }
  CHECK(std::abs(d.total() - 1.0) < 1e-14);
  const MomentSummary m = moments(d, 1);
  CHECK(m.mean.norm() < 1e-15);
  CHECK(std::abs(m.second(0, 0) - 1.0) < 1e-14);
  CHECK_THROWS_AS(moments(d, 0), ParameterError);
}

TEST_CASE("evolution matches the site-by-site oracle") {
  const Model m(CoinParameters::from_squares(0.7, 0.4, {0.3, -0.8}, {1.1, 0.2}, {0.5, -0.4}));
  const double r = 1.0 / std::sqrt(3.0);
  const std::vector<SiteAmplitude> sites{{0, 0, spinor(r, cd(0, r))}, {2, -1, spinor(0.0, r)}};
  LatticeState s = initial_state(sites);
  Field f;
  for (const auto& a : sites) f[{a.x1, a.x2}] = a.value;
  for (int t = 1; t <= 7; ++t) {
    s = step(m, s);
    f = brute_step(m, f);
    double diff = 0.0;
    for (const auto& [site, v] : f) diff = std::max(diff, (s.at(site.first, site.second) - v).norm());
    CHECK(diff < 1e-14);
    CHECK(std::abs(s.norm_squared() - 1.0) < 1e-14);
  }
  CHECK(s.time() == 7);
}

TEST_CASE("evolve edge cases") {
  const Model m(CoinParameters::from_squares(0.9, 0.1));
  const LatticeState s0 = initial_state_delta(spinor(1.0, 0.0));
  const LatticeState e0 = evolve(m, s0, 0);
  CHECK(e0.time() == 0);
  CHECK(position_distribution(e0).at(0, 0) == 1.0);
  const LatticeState e1 = evolve(m, s0, 1);
  const LatticeState one = step(m, s0);
  CHECK((e1.component1() - one.component1()).abs().maxCoeff() == 0.0);
  CHECK((e1.component2() - one.component2()).abs().maxCoeff() == 0.0);
}

TEST_CASE("distribution csv and amplitude dump") {
  const LatticeState s = evolve(kHadamard, initial_state_delta(spinor(1.0, 0.0)), 2);
  std::ostringstream csv;
  write_distribution_csv(csv, position_distribution(s));
  CHECK(csv.str().rfind("x1,x2,probability\n", 0) == 0);

  std::stringstream bin;
  write_amplitudes_binary(bin, s);
  const LatticeState back = read_amplitudes_binary(bin);
  CHECK(back.window().x1_min == s.window().x1_min);
  CHECK(back.window().x2_max == s.window().x2_max);
  CHECK((back.component1() - s.component1()).abs().maxCoeff() == 0.0);
  CHECK((back.component2() - s.component2()).abs().maxCoeff() == 0.0);
}
