#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "stpnp/fespace.hpp"
#include "stpnp/problem.hpp"
#include "stpnp/quadrature.hpp"
#include "stpnp/sparse.hpp"

namespace stpnp {

/// Quadrature overrides; zero selects the defaults (m+3 temporal Gauss
/// points, spatial exactness 2k+2).
struct QuadratureOrders {
  int temporal_points = 0;
  int spatial_order = 0;
};

/// Largest exponent accepted before a state is declared diverged.
inline constexpr double kMaxExponent = 700.0;

/// Nonlinear residual and Jacobian of the space-time slab system for the
/// entropy-variable PNP model with temporal degree m.
///
/// Species equations are tested against P_k x P_m; the time derivative is
/// integrated by parts on the slab so that the upwind jump and the
/// derivative term combine into
///   (A e^{u^-}, v^-) - (A e^{u_prev}, v^+) - int (A e^u, d_t v) dt.
/// The Poisson equation is tested against P_k x P_{m-1} on the slab plus
/// exactly at the right endpoint. Every spatial integral carries the
/// cross-section weight A(x).
class SlabAssembler {
 public:
  SlabAssembler(ProblemSpec spec, std::shared_ptr<const SpatialSpace> space, int m,
                QuadratureOrders orders = {});

  const ProblemSpec& spec() const { return spec_; }
  const SpatialSpace& space() const { return *space_; }
  std::shared_ptr<const SpatialSpace> space_ptr() const { return space_; }
  int temporal_degree() const { return m_; }
  int num_species() const { return spec_.num_species(); }
  std::size_t spatial_dofs() const { return nd_; }
  std::size_t num_unknowns() const { return n_unknowns_; }
  std::size_t num_multipliers() const { return spec_.gauge == Gauge::ZeroMean ? m_ + 1 : 0; }

  std::size_t species_index(int i, int mode, std::size_t dof) const {
    return (static_cast<std::size_t>(i) * (m_ + 1) + mode) * nd_ + dof;
  }
  std::size_t potential_index(int mode, std::size_t dof) const {
    return species_index(num_species(), mode, dof);
  }
  std::size_t multiplier_index(int mode) const {
    return static_cast<std::size_t>(num_species() + 1) * (m_ + 1) * nd_ + mode;
  }

  const TemporalBasis& trial_basis() const { return trial_; }
  const QuadratureRule& time_rule() const { return time_rule_; }
  const QuadratureRule& space_rule() const { return space_rule_; }

  struct QuadPoint {
    Point x;
    double weight;  // reference weight times |det J|
    double area;
    double permittivity;
    double fixed_charge;
  };
  const QuadPoint& quad_point(std::size_t e, std::size_t p) const {
    return qp_[e * space_rule_.size() + p];
  }
  std::span<const double> ref_values(std::size_t p) const {
    return {ref_values_.data() + p * nloc_, nloc_};
  }
  std::span<const Point> gradients(std::size_t e, std::size_t p) const {
    return {grads_.data() + (e * space_rule_.size() + p) * nloc_, nloc_};
  }

  /// Constant-in-time extension of `incoming` over [t0, t0+dt] with the
  /// Dirichlet values imposed.
  SlabState initial_guess(const TraceState& incoming, double t0, double dt) const;
  void impose_dirichlet_values(SlabState& slab) const;
  TraceState right_trace(const SlabState& slab) const;

  /// Residual. With `constrained`, Dirichlet rows read (value - prescribed).
  std::vector<double> residual(const SlabState& slab, bool constrained = true) const;
  /// Exact derivative of residual(slab, constrained).
  CsrMatrix jacobian(const SlabState& slab, bool constrained = true) const;
  void assemble(const SlabState& slab, std::vector<double>* residual, CsrMatrix* jacobian,
                bool constrained = true) const;

  /// Eliminates the Dirichlet unknowns symmetrically from J dx = rhs: the
  /// constrained rows become identity rows, their columns are zeroed and
  /// the right-hand side of the free rows is adjusted accordingly.
  void apply_dirichlet(CsrMatrix& jacobian, std::vector<double>& rhs) const;

  /// Sorted list of Dirichlet-constrained unknowns.
  const std::vector<std::size_t>& constrained_unknowns() const { return constrained_; }

  /// Per species: sum of the unconstrained residual over its Dirichlet rows,
  /// i.e. the amount that left the domain through the Dirichlet boundary
  /// during the slab (negative when mass flowed in).
  std::vector<double> boundary_outflow(const SlabState& slab) const;

  /// u_i = nodal interpolant of log c_i^0; phi from the endpoint Poisson
  /// equation at t0 with those densities.
  TraceState initial_state(double t0 = 0.0) const;

  /// Solves the (linear) endpoint Poisson equation for phi given u traces.
  std::vector<double> solve_trace_potential(const std::vector<std::vector<double>>& u,
                                            double t) const;

 private:
  struct Constraint {
    std::size_t index;
    int field;  // species index or -1 for the potential
    int mode;
    std::size_t dof;
    const SpaceTimeFunction* value;
  };

  double prescribed(const Constraint& c, double t0, double dt) const;
  void build_pattern();

  ProblemSpec spec_;
  std::shared_ptr<const SpatialSpace> space_;
  int m_;
  std::size_t nd_;
  std::size_t nloc_;
  std::size_t n_unknowns_;
  TemporalBasis trial_;
  std::optional<TemporalBasis> test_;  // P_{m-1} test basis, absent for m = 0
  QuadratureRule time_rule_;
  QuadratureRule space_rule_;
  std::vector<double> ref_values_;
  std::vector<Point> grads_;
  std::vector<QuadPoint> qp_;
  std::vector<double> dof_integrals_;  // int N_j dx (unweighted), for the gauge
  std::vector<Constraint> constraints_;
  std::vector<std::size_t> constrained_;
  CsrMatrix pattern_;
};

}  // namespace stpnp
