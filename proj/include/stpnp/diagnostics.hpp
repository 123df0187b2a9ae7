#pragma once

#include <functional>
#include <vector>

#include "stpnp/assembly.hpp"

namespace stpnp {

/// Entropy density U(eta) = e^eta (eta - 1); U >= -1 with equality at 0.
double entropy_density(double eta);

/// Discrete energy of a trace: int A [sum_i U(u_i) + eps/(2 kB T) |grad phi|^2].
double energy(const SlabAssembler& assembler, const TraceState& trace);

/// Physical dissipation over a slab:
/// int_slab int A sum_i D_i e^{u_i} |grad u_i + kappa_i grad phi|^2.
double dissipation(const SlabAssembler& assembler, const SlabState& slab);

/// int A e^{u_i} per species.
std::vector<double> masses(const SlabAssembler& assembler, const TraceState& trace);

/// Smallest density e^{u_i} over all species and spatial quadrature points.
double min_density(const SlabAssembler& assembler, const TraceState& trace);

/// Exact field value: field is a species index, or -1 for the potential.
using ExactField = std::function<double(int field, double t, const Point& x)>;

/// L2 errors of the trace against `exact` at time t: u_1..u_N, then phi.
std::vector<double> l2_error(const SlabAssembler& assembler, const TraceState& trace,
                             const ExactField& exact, double t);

/// One attempted time step. Quantities that do not exist for a rejected
/// attempt are NaN.
struct DiagnosticsRecord {
  int step = 0;                  // index of the accepted step this attempt belongs to
  double time = 0.0;             // t^{n+1} (slab right end)
  double dt = 0.0;
  double energy = 0.0;
  double dissipation_rate = 0.0;       // Diss / dt
  double energy_drop_rate = 0.0;       // (E_prev - E) / dt
  double numerical_dissipation = 0.0;  // E_prev - E - Diss
  std::vector<double> mass;
  std::vector<double> outflow;   // mass leaving through Dirichlet boundaries during the slab
  double min_density = 0.0;
  int newton_iterations = 0;
  double estimator = 0.0;        // 0 in fixed-step mode
  bool accepted = false;
  int attempts = 0;              // attempts for this step so far (1 = first try)
};

}  // namespace stpnp
