#include "stpnp/timeloop.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stpnp/error.hpp"

namespace stpnp {

double DtMaxSchedule::at(double t) const {
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  return caps[static_cast<std::size_t>(it - times.begin())];
}

double estimate_error(double e_high, double e_low, double floor) {
  const double diff = std::abs(e_high - e_low);
  const double e = e_high != 0.0 ? diff / std::abs(e_high) : diff;
  return std::max(e, floor);
}

double StepController::propose_step(double e, double t) const {
  const double temp = std::pow(tol / e, ki) * std::pow(e_prev / e, kp) * dt_prev;
  return std::min({temp, theta_max * dt_prev, dt_max.at(t)});
}

void RunConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::Config, what); };
  if (k < 1) fail("k must be >= 1");
  if (m < 0) fail("m must be >= 0");
  if (!(dt_initial > 0.0)) fail("initial time step must be positive");
  if (!(t_end > t_start) && !steady_state) fail("end time must exceed start time");
  if (adaptive && !(tol > 0.0)) fail("tolerance must be positive");
  if (dt_max.caps.size() != dt_max.times.size() + 1) fail("dt_max schedule is malformed");
  if (!std::is_sorted(dt_max.times.begin(), dt_max.times.end())) fail("dt_max times must increase");
  for (double c : dt_max.caps)
    if (!(c > 0.0)) fail("dt_max caps must be positive");
  if (max_retries < 1) fail("max_retries must be >= 1");
  if (!(steady_threshold > 0.0)) fail("steady-state threshold must be positive");
}

TimeLoop::TimeLoop(std::shared_ptr<const SlabAssembler> high,
                   std::shared_ptr<const SlabAssembler> low, RunConfig config)
    : high_(std::move(high)), low_(std::move(low)), config_(std::move(config)) {
  config_.validate();
  if (config_.adaptive && !low_)
    throw Error(ErrorKind::Config, "adaptive stepping needs the m = 0 companion assembler");
  ctrl_.tol = config_.tol;
  ctrl_.dt_max = config_.dt_max;
  ctrl_.e_prev = config_.tol;
}

StepResult TimeLoop::advance(const TraceState& state, double energy_prev, double dt, int step,
                             const RunObserver& observer) {
  StepResult result;
  const double t0 = state.time;
  const auto nan = std::numeric_limits<double>::quiet_NaN();
  for (int attempt = 1;; ++attempt) {
    if (attempt > config_.max_retries)
      throw Error(ErrorKind::StepFailure, "retry budget exhausted at t = " + std::to_string(t0));
    if (dt < config_.dt_min)
      throw Error(ErrorKind::StepFailure, "time step underflow at t = " + std::to_string(t0));

    DiagnosticsRecord rec;
    rec.step = step;
    rec.time = t0 + dt;
    rec.dt = dt;
    rec.attempts = attempt;

    NewtonResult hi = try_newton_solve(*high_, high_->initial_guess(state, t0, dt), config_.newton);
    rec.newton_iterations = hi.report.iterations;
    bool ok = hi.report.converged;
    TraceState trace;
    double e_now = nan;
    double est = 0.0;
    if (ok) {
      trace = high_->right_trace(hi.state);
      e_now = energy(*high_, trace);
      if (config_.adaptive) {
        NewtonResult lo = try_newton_solve(*low_, low_->initial_guess(state, t0, dt), config_.newton);
        if (lo.report.converged)
          est = estimate_error(e_now, energy(*low_, low_->right_trace(lo.state)), ctrl_.floor);
        else
          est = nan;
        ok = lo.report.converged && ctrl_.acceptable(est);
      }
    }
    rec.estimator = est;

    if (!ok) {
      rec.accepted = false;
      rec.energy = rec.dissipation_rate = rec.energy_drop_rate = rec.numerical_dissipation = nan;
      rec.min_density = nan;
      if (observer) observer(rec, state);
      result.attempts.push_back(std::move(rec));
      dt *= 0.5;
      continue;
    }

    const double diss = dissipation(*high_, hi.state);
    rec.accepted = true;
    rec.energy = e_now;
    rec.dissipation_rate = diss / dt;
    rec.energy_drop_rate = (energy_prev - e_now) / dt;
    rec.numerical_dissipation = energy_prev - e_now - diss;
    rec.mass = masses(*high_, trace);
    if (config_.compute_outflow) rec.outflow = high_->boundary_outflow(hi.state);
    rec.min_density = min_density(*high_, trace);
    if (!(rec.min_density > 0.0))
      throw Error(ErrorKind::PositivityViolation, "non-positive density at t = " + std::to_string(rec.time));

    if (observer) observer(rec, trace);
    result.attempts.push_back(std::move(rec));
    result.state = std::move(trace);
    return result;
  }
}

RunResult TimeLoop::run(const RunObserver& observer) {
  return run(high_->initial_state(config_.t_start), observer);
}

RunResult TimeLoop::run(TraceState initial, const RunObserver& observer) {
  RunResult out;
  TraceState state = std::move(initial);
  out.initial_energy = energy(*high_, state);
  out.initial_mass = masses(*high_, state);
  double e_prev_energy = out.initial_energy;
  double dt = std::min(config_.dt_initial, config_.dt_max.at(state.time));
  ctrl_.e_prev = config_.tol;
  const double t_end = config_.t_end;

  for (long step = 1; step <= config_.max_steps; ++step) {
    if (std::isfinite(t_end)) {
      if (state.time >= t_end - 1e-12 * std::max(1.0, std::abs(t_end))) break;
      // Land exactly on the end time; absorb a sliver rather than leave one.
      if (state.time + dt * (1.0 + 1e-10) >= t_end) dt = t_end - state.time;
    }
    StepResult r = advance(state, e_prev_energy, dt, static_cast<int>(step), observer);
    for (auto& rec : r.attempts) out.records.push_back(std::move(rec));
    const DiagnosticsRecord& last = out.records.back();
    const double used_dt = last.dt;
    const double e_new = last.energy;
    state = std::move(r.state);
    ++out.accepted_steps;

    if (config_.adaptive) {
      ctrl_.dt_prev = used_dt;
      dt = ctrl_.propose_step(last.estimator, state.time);
      ctrl_.e_prev = last.estimator;
    } else {
      dt = config_.dt_initial;
    }

    const double change = std::abs(e_new - e_prev_energy);
    e_prev_energy = e_new;
    if (config_.steady_state && out.accepted_steps >= 2 &&
        change < config_.steady_threshold * std::abs(e_new)) {
      out.steady = true;
      break;
    }
  }
  out.final_state = std::move(state);
  return out;
}

RunResult run(const ProblemSpec& spec, std::shared_ptr<const SpatialSpace> space,
              const RunConfig& config, const RunObserver& observer) {
  auto high = std::make_shared<SlabAssembler>(spec, space, config.m, config.quadrature);
  std::shared_ptr<SlabAssembler> low;
  if (config.adaptive)
    low = config.m == 0 ? high : std::make_shared<SlabAssembler>(spec, space, 0, config.quadrature);
  TimeLoop loop(high, low, config);
  return loop.run(observer);
}

}  // namespace stpnp
