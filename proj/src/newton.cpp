#include "stpnp/newton.hpp"

#include <algorithm>
#include <cmath>


#include "stpnp/diagnostics.hpp"
#include "stpnp/error.hpp"
#include "stpnp/lu.hpp"
#include "stpnp/simd/kernels.hpp"

namespace stpnp {
namespace {


// Inverse row maxima of the Jacobian. Species rows scale with the local
// density, which may be e^-100 in depleted regions; weighting by these makes
// every row count in the convergence test and the line search.
std::vector<double> row_weights(const CsrMatrix& J) {
  std::vector<double> w(J.rows(), 1.0);
  for (std::size_t r = 0; r < J.rows(); ++r) {
    double big = 0.0;
    for (double v : J.row_values(r)) big = std::max(big, std::abs(v));
    if (big > 0.0 && std::isfinite(big)) w[r] = 1.0 / big;
  }
  return w;
}

double weighted_norm(const std::vector<double>& F, const std::vector<double>& w) {
  double s = 0.0;
  for (std::size_t i = 0; i < F.size(); ++i) s += (w[i] * F[i]) * (w[i] * F[i]);
  return std::sqrt(s);
}

}  // namespace

NewtonResult try_newton_solve(const SlabAssembler& a, SlabState guess, const NewtonOptions& opt) {
  NewtonResult out;
  NewtonReport& rep = out.report;
  SlabState& s = guess;
  a.impose_dirichlet_values(s);

  std::vector<double> F;
  CsrMatrix J;
  try {
    a.assemble(s, &F, &J);
  } catch (const Error& e) {
    rep.stop_reason = e.what();
    out.state = std::move(s);
    return out;
  }
  double fnorm = weighted_norm(F, row_weights(J));
  rep.initial_residual = fnorm;
  rep.residual_history.push_back(fnorm);
  const double target = std::max(opt.absolute_tol, opt.relative_tol * fnorm);
  double energy_prev = energy(a, a.right_trace(s));
  double first_change = 0.0;

  auto finish = [&](bool ok, const char* why) {
    rep.converged = ok;
    rep.final_residual = fnorm;
    rep.stop_reason = why;
    out.state = std::move(s);
    return std::move(out);
  };

  if (fnorm <= target) return finish(true, "residual");

  for (int it = 0; it < opt.max_iterations; ++it) {
    std::vector<double> rhs(F.size());
    for (std::size_t i = 0; i < F.size(); ++i) rhs[i] = -F[i];
    a.apply_dirichlet(J, rhs);
    std::vector<double> dx;
    try {
      dx = lu_solve(J, rhs);
    } catch (const Error&) {
      return finish(false, "singular Jacobian");
    }
    rep.iterations = it + 1;

    const double xnorm = simd::max_abs(s.x.data(), s.x.size());
    const double dxnorm = simd::max_abs(dx.data(), dx.size());

    // Backtracking: halve until the weighted residual decreases and the state
    // is admissible. The merit uses the weights of the point it is evaluated
    // at, so that it is one function of the state across iterations.
    double alpha = 1.0;
    bool accepted = false;
    SlabState trial = s;
    std::vector<double> Ft;
    CsrMatrix Jt;
    double ftnorm = 0.0;
    for (int bt = 0; bt <= opt.max_backtracks; ++bt, alpha *= 0.5) {
      for (std::size_t i = 0; i < dx.size(); ++i) trial.x[i] = s.x[i] + alpha * dx[i];
      try {
        a.assemble(trial, &Ft, &Jt);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::DivergedState) throw;
        continue;
      }
      ftnorm = weighted_norm(Ft, row_weights(Jt));
      if (std::isfinite(ftnorm) && ftnorm < fnorm) {
        accepted = true;
        break;
      }
    }

    // A full step that is already at round-off level counts as convergence.
    const bool tiny_step = dxnorm <= opt.step_tol * (1.0 + xnorm);
    if (!accepted) {
      if (tiny_step) return finish(true, "step");
      return finish(false, "line search failed");
    }

    s = std::move(trial);
    F = std::move(Ft);
    fnorm = ftnorm;
    const double e_now = energy(a, a.right_trace(s));
    rep.energy_history.push_back(e_now);
    const double change = std::abs(e_now - energy_prev);
    energy_prev = e_now;
    if (it == 0) first_change = change;

    J = std::move(Jt);
    rep.residual_history.push_back(fnorm);

    if (fnorm <= target) return finish(true, "residual");
    if (alpha == 1.0 && tiny_step) return finish(true, "step");
    if (opt.energy_criterion && it > 0 && first_change > 0.0 && fnorm <= opt.energy_gate &&
        change <= opt.energy_tol * first_change)
      return finish(true, "energy");
  }
  return finish(false, "max iterations");
}

NewtonResult newton_solve(const SlabAssembler& a, SlabState guess, const NewtonOptions& opt) {
  NewtonResult r = try_newton_solve(a, std::move(guess), opt);
  if (!r.report.converged)
    throw Error(ErrorKind::NewtonFailure,
                "Newton failed after " + std::to_string(r.report.iterations) +
                    " iterations (" + r.report.stop_reason + "), residual " +
                    std::to_string(r.report.final_residual));
  return r;
}

}  // namespace stpnp
