#include <gtest/gtest.h>

#include <cmath>
#include <memory>

#include "stpnp/error.hpp"
#include "stpnp/newton.hpp"
#include "stpnp/presets.hpp"

using namespace stpnp;

namespace {

NewtonOptions tight() {
  NewtonOptions o;
  o.energy_criterion = false;
  o.relative_tol = 1e-14;
  o.absolute_tol = 1e-14;
  return o;
}

}  // namespace

TEST(Newton, LinearPoissonBlockInOneIteration) {
  // Neutral species at their boundary density only feed a constant charge
  // into Poisson, which is then linear in phi.
  ProblemSpec s;
  Species sp;
  sp.valence = 0.0;
  sp.initial_density = [](const Point&) { return 1.0; };
  s.species.push_back(sp);
  s.fixed_charge = CoefficientField::closed_form("rho0", [](const Point& x) { return std::sin(3 * x[0]); });
  s.dirichlet.push_back({1, FieldRef::species(0), [](double, const Point&) { return 1.0; }});
  s.dirichlet.push_back({1, FieldRef::potential(), [](double, const Point&) { return 0.0; }});
  auto space = build_space(std::make_shared<const Mesh>(build_unit_square_mesh(4)), 2);
  SlabAssembler a(s, space, 1);
  TraceState in = a.initial_state();
  for (double& p : in.phi) p = 0.0;
  const auto r = newton_solve(a, a.initial_guess(in, 0.0, 0.5), tight());
  EXPECT_EQ(r.report.iterations, 1);
  EXPECT_TRUE(r.report.converged);
  EXPECT_LE(r.report.final_residual, 1e-12);
}

TEST(Newton, ExampleOneIterationCountsAndQuadraticTail) {
  CaseConfig c;
  c.h = 0.125;
  c.dt = 0.25;
  const Case cs = build_case(c);
  SlabAssembler a(cs.spec, cs.space, 1);
  TraceState state = a.initial_state();
  NewtonOptions opt = tight();
  for (int n = 0; n < 4; ++n) {
    const auto r = newton_solve(a, a.initial_guess(state, state.time, 0.25), opt);
    EXPECT_GE(r.report.iterations, 2);
    EXPECT_LE(r.report.iterations, 6);
    const auto& h = r.report.residual_history;
    if (h.size() > 3) {
      // log-log slope of consecutive residuals over the last three iterates
      const std::size_t k = h.size() - 1;
      if (h[k] > 1e-15) {
        const double slope = std::log(h[k] / h[k - 1]) / std::log(h[k - 1] / h[k - 2]);
        EXPECT_GE(slope, 1.7) << "slab " << n;
      }
    }
    state = a.right_trace(r.state);
  }
  EXPECT_NEAR(state.time, 1.0, 1e-14);
}

TEST(Newton, DefaultStopIsEnergyOrResidual) {
  CaseConfig c;
  c.h = 0.125;
  const Case cs = build_case(c);
  SlabAssembler a(cs.spec, cs.space, 1);
  const auto r = newton_solve(a, a.initial_guess(a.initial_state(), 0.0, 0.25));
  EXPECT_TRUE(r.report.stop_reason == "residual" || r.report.stop_reason == "energy");
  EXPECT_EQ(r.report.energy_history.size(), static_cast<std::size_t>(r.report.iterations));
  EXPECT_EQ(r.report.residual_history.size(), static_cast<std::size_t>(r.report.iterations) + 1);
}

TEST(Newton, FixedPointNeedsNoWork) {
  CaseConfig c;
  c.h = 0.25;
  const Case cs = build_case(c);
  SlabAssembler a(cs.spec, cs.space, 1);
  const auto first = newton_solve(a, a.initial_guess(a.initial_state(), 0.0, 0.5), tight());
  const auto again = try_newton_solve(a, first.state, tight());
  EXPECT_TRUE(again.report.converged);
  EXPECT_LE(again.report.iterations, 1);
  double change = 0.0;
  for (std::size_t i = 0; i < first.state.x.size(); ++i)
    change = std::max(change, std::abs(first.state.x[i] - again.state.x[i]));
  EXPECT_LE(change, 1e-12);
}

TEST(Newton, FailureIsReportedNotThrownByTry) {
  CaseConfig c;
  c.h = 0.25;
  const Case cs = build_case(c);
  SlabAssembler a(cs.spec, cs.space, 1);
  NewtonOptions opt = tight();
  opt.max_iterations = 1;
  const auto r = try_newton_solve(a, a.initial_guess(a.initial_state(), 0.0, 0.5), opt);
  EXPECT_FALSE(r.report.converged);
  EXPECT_EQ(r.report.stop_reason, "max iterations");
  try {
    newton_solve(a, a.initial_guess(a.initial_state(), 0.0, 0.5), opt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NewtonFailure);
  }
}
