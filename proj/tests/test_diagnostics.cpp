#include <gtest/gtest.h>

#include <cmath>
#include <memory>

#include "stpnp/diagnostics.hpp"
#include "stpnp/newton.hpp"
#include "stpnp/presets.hpp"

using namespace stpnp;

namespace {

ProblemSpec uniform_pair() {
  ProblemSpec s;
  for (int i = 0; i < 2; ++i) {
    Species sp;
    sp.valence = i == 0 ? 1.0 : -1.0;
    sp.initial_density = [](const Point&) { return 1.0; };
    s.species.push_back(sp);
  }
  s.gauge = Gauge::ZeroMean;
  return s;
}

ProblemSpec closed_relaxing() {
  ProblemSpec s;
  for (int i = 0; i < 2; ++i) {
    Species sp;
    sp.valence = i == 0 ? 1.0 : -1.0;
    sp.diffusivity = i == 0 ? 1.0 : 0.6;
    sp.initial_density = [i](const Point& x) {
      return 1.0 + (i == 0 ? 0.7 : -0.4) * std::cos(M_PI * x[0]);
    };
    s.species.push_back(sp);
  }
  s.permittivity = CoefficientField::constant("eps", 0.2);
  s.cross_section = CoefficientField::closed_form("A", [](const Point& x) { return 1.0 + x[0] * x[0]; });
  s.gauge = Gauge::ZeroMean;
  return s;
}

}  // namespace

TEST(Diagnostics, EntropyDensity) {
  EXPECT_EQ(entropy_density(0.0), -1.0);
  EXPECT_NEAR(entropy_density(1.0), 0.0, 1e-15);
  EXPECT_NEAR(entropy_density(2.0), std::exp(2.0), 1e-13);
  for (double eta : {-30.0, -2.0, -0.1, 0.1, 3.0}) EXPECT_GT(entropy_density(eta), -1.0);
}

TEST(Diagnostics, UniformStateOnUnitSquare) {
  auto space = build_space(std::make_shared<const Mesh>(build_unit_square_mesh(3)), 2);
  SlabAssembler a(uniform_pair(), space, 1);
  const TraceState t = a.initial_state();
  EXPECT_NEAR(energy(a, t), -2.0, 1e-13);
  const auto m = masses(a, t);
  ASSERT_EQ(m.size(), 2u);
  EXPECT_NEAR(m[0], 1.0, 1e-13);
  EXPECT_NEAR(m[1], 1.0, 1e-13);
  EXPECT_NEAR(min_density(a, t), 1.0, 1e-14);
}

TEST(Diagnostics, ChannelMassMatchesClosedForm) {
  CaseConfig c;
  c.preset = "example2";
  c.h = 0.25;
  const Case cs = build_case(c);
  SlabAssembler a(cs.spec, cs.space, 1);
  // Unit densities: pi * int r^2 over the four radius branches.
  const double r2 = (343.0 - 8.0) / 1.5 + 13.0 * 4.0 + 15.0 * 0.25 + (2744.0 - 0.125) / 2.7;
  const auto m = masses(a, a.initial_state());
  EXPECT_NEAR(m[0], M_PI * r2, 1e-9 * M_PI * r2);
  EXPECT_NEAR(m[1], M_PI * r2, 1e-9 * M_PI * r2);
}

TEST(Diagnostics, DissipationBoundsEnergyDrop) {
  auto space = build_space(std::make_shared<const Mesh>(build_interval_mesh(0.0, 1.0, 12)), 2);
  NewtonOptions opt;
  opt.energy_criterion = false;
  opt.relative_tol = 1e-13;
  opt.absolute_tol = 1e-13;
  for (int m : {0, 1, 2}) {
    SlabAssembler a(closed_relaxing(), space, m);
    TraceState state = a.initial_state();
    double e_prev = energy(a, state);
    for (int n = 0; n < 4; ++n) {
      const auto r = newton_solve(a, a.initial_guess(state, state.time, 0.05), opt);
      const double diss = dissipation(a, r.state);
      EXPECT_GE(diss, 0.0);
      state = a.right_trace(r.state);
      const double e = energy(a, state);
      EXPECT_LE(e - e_prev + diss, 1e-9 * (1.0 + std::abs(e))) << "m=" << m << " slab " << n;
      e_prev = e;
    }
  }
}

TEST(Diagnostics, InterpolantErrorIsSmall) {
  CaseConfig c;
  c.h = 1.0 / 16;
  c.k = 2;
  const Case cs = build_case(c);
  SlabAssembler a(cs.spec, cs.space, 1);
  const double t = 0.7;
  TraceState tr;
  tr.time = t;
  for (int i = 0; i < 2; ++i)
    tr.u.push_back(cs.space->interpolate([&](const Point& x) { return cs.exact(i, t, x); }));
  tr.phi = cs.space->interpolate([&](const Point& x) { return cs.exact(-1, t, x); });
  const auto err = l2_error(a, tr, cs.exact, t);
  ASSERT_EQ(err.size(), 3u);
  for (double e : err) {
    EXPECT_GT(e, 0.0);
    EXPECT_LT(e, 1e-3);
  }
  // The zero function is off by the L2 norm of the exact field.
  TraceState zero = tr;
  for (double& p : zero.phi) p = 0.0;
  const double s = std::sin(t);
  EXPECT_NEAR(l2_error(a, zero, cs.exact, t)[2], s / 2.0, 1e-8);
}

TEST(Diagnostics, MinDensityTracksSmallestSpecies) {
  auto space = build_space(std::make_shared<const Mesh>(build_interval_mesh(0.0, 1.0, 4)), 1);
  SlabAssembler a(uniform_pair(), space, 0);
  TraceState t = a.initial_state();
  for (double& v : t.u[1]) v = -3.0;
  EXPECT_NEAR(min_density(a, t), std::exp(-3.0), 1e-15);
}
