#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <vector>

#include "stpnp/assembly.hpp"
#include "stpnp/diagnostics.hpp"
#include "stpnp/newton.hpp"

namespace stpnp {

/// Piecewise-constant cap on the step size: caps[j] applies for
/// times[j-1] <= t < times[j] (times has one entry fewer than caps).
struct DtMaxSchedule {
  std::vector<double> times;
  std::vector<double> caps{std::numeric_limits<double>::infinity()};

  double at(double t) const;
};

/// Relative energy difference, floored; absolute difference when E_high = 0.
double estimate_error(double e_high, double e_low, double floor = 1e-14);

/// PI step-size controller.
struct StepController {
  double tol = 1e-3;
  double kp = 0.13;
  double ki = 1.0 / 15.0;
  double theta_max = 2.0;
  double rho = 1.2;
  double floor = 1e-14;
  DtMaxSchedule dt_max;
  double dt_prev = 0.0;
  double e_prev = 0.0;  // initialized to tol before the first step

  /// dt_temp = (tol/e)^ki (e_prev/e)^kp dt_prev, capped by theta_max dt_prev
  /// and dt_max(t).
  double propose_step(double e, double t) const;
  bool acceptable(double e) const { return e <= rho * tol; }
};

struct RunConfig {
  int k = 1;
  int m = 1;
  double dt_initial = 0.1;
  double t_start = 0.0;
  double t_end = std::numeric_limits<double>::infinity();
  bool steady_state = false;       // stop when the relative energy change drops below the threshold
  double steady_threshold = 1e-13;
  bool adaptive = true;
  double tol = 1e-3;
  DtMaxSchedule dt_max;
  int max_retries = 30;
  double dt_min = 1e-14;
  long max_steps = 1000000;
  NewtonOptions newton;
  QuadratureOrders quadrature;
  bool compute_outflow = true;

  /// Throws Config for inconsistent settings.
  void validate() const;
};

/// Result of one accepted step.
struct StepResult {
  TraceState state;
  std::vector<DiagnosticsRecord> attempts;  // rejected attempts first, accepted one last
};

struct RunResult {
  double initial_energy = 0.0;
  std::vector<double> initial_mass;
  std::vector<DiagnosticsRecord> records;
  TraceState final_state;
  long accepted_steps = 0;
  bool steady = false;
};

/// Called after every attempt; the trace is the accepted state (or the
/// incoming one for a rejected attempt).
using RunObserver = std::function<void(const DiagnosticsRecord&, const TraceState&)>;

/// Time integrator. `high` is the order-m assembler; `low` the m = 0
/// companion on the same space (only needed in adaptive mode).
class TimeLoop {
 public:
  TimeLoop(std::shared_ptr<const SlabAssembler> high, std::shared_ptr<const SlabAssembler> low,
           RunConfig config);

  const RunConfig& config() const { return config_; }
  const StepController& controller() const { return ctrl_; }
  StepController& controller() { return ctrl_; }

  /// Advances one accepted step from `state` with trial size `dt`, retrying
  /// with halved sizes on rejection. Throws StepFailure when the retry
  /// budget or the minimum step is exhausted.
  StepResult advance(const TraceState& state, double energy_prev, double dt, int step,
                     const RunObserver& observer = {});

  RunResult run(const RunObserver& observer = {});
  RunResult run(TraceState initial, const RunObserver& observer = {});

 private:
  std::shared_ptr<const SlabAssembler> high_;
  std::shared_ptr<const SlabAssembler> low_;
  RunConfig config_;
  StepController ctrl_;
};

/// Builds the assemblers for `spec` on `space` and runs.
RunResult run(const ProblemSpec& spec, std::shared_ptr<const SpatialSpace> space,
              const RunConfig& config, const RunObserver& observer = {});

}  // namespace stpnp
