#pragma once

#include <string>
#include <vector>

#include "stpnp/assembly.hpp"

namespace stpnp {

struct NewtonOptions {
  int max_iterations = 25;
  double relative_tol = 1e-8;   // on the row-weighted ||F||_2, relative to the initial one
  double absolute_tol = 1e-12;
  double energy_tol = 1e-8;     // |dE_iter| <= energy_tol * |dE_first|
  bool energy_criterion = true;
  // The energy criterion only stops once the row-weighted residual is below
  // this; the energy barely sees depleted species, so on its own it can
  // accept states whose depleted rows are far from converged.
  double energy_gate = 1e-6;
  double step_tol = 1e-13;      // ||dx||_inf <= step_tol * (1 + ||x||_inf)
  int max_backtracks = 8;
};

struct NewtonReport {
  int iterations = 0;
  bool converged = false;
  double initial_residual = 0.0;
  double final_residual = 0.0;
  std::vector<double> residual_history;  // row-weighted ||F||_2, initial and after each update
  std::vector<double> energy_history;    // right-trace energy after each update
  std::string stop_reason;
};

struct NewtonResult {
  SlabState state;
  NewtonReport report;
};

/// Newton iteration with backtracking on the slab system. Never throws for
/// non-convergence; report.converged says whether a criterion was met.
NewtonResult try_newton_solve(const SlabAssembler& assembler, SlabState guess,
                              const NewtonOptions& options = {});

/// As try_newton_solve, but failure raises Error(NewtonFailure).
NewtonResult newton_solve(const SlabAssembler& assembler, SlabState guess,
                          const NewtonOptions& options = {});

}  // namespace stpnp
