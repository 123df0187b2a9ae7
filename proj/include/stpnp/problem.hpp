#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "stpnp/coefficient.hpp"
#include "stpnp/mesh.hpp"

namespace stpnp {

/// Function of (t, x).
using SpaceTimeFunction = std::function<double(double, const Point&)>;

struct Species {
  double valence = 0.0;      // z_i
  double diffusivity = 1.0;  // D_i
  std::function<double(const Point&)> initial_density;  // c_i^0 > 0
  SpaceTimeFunction forcing;                            // f_i, optional
};

/// Field a Dirichlet condition applies to: a species index, or the potential.
struct FieldRef {
  static constexpr int kPotential = -1;
  int index = kPotential;

  static FieldRef species(int i) { return {i}; }
  static FieldRef potential() { return {kPotential}; }
  bool is_potential() const { return index == kPotential; }
  bool operator==(const FieldRef&) const = default;
};

/// Dirichlet data on the facets with `marker`. For a species the value is a
/// density c > 0 (imposed as u = log c); for the potential it is phi itself.
struct DirichletCondition {
  int marker = 0;
  FieldRef field;
  SpaceTimeFunction value;
};

enum class Gauge { Dirichlet, ZeroMean };

/// Poisson-Nernst-Planck model data in entropy variables.
///
/// Unlisted boundary parts are natural (zero normal flux / zero normal
/// field). The scheme only sees the ratios z e/(kB T), eps/(kB T).
struct ProblemSpec {
  std::vector<Species> species;
  double unit_charge = 1.0;  // e
  double boltzmann = 1.0;    // k_B
  double temperature = 1.0;  // T
  CoefficientField permittivity = CoefficientField::constant("eps", 1.0);
  CoefficientField fixed_charge = CoefficientField::constant("rho0", 0.0);
  CoefficientField cross_section = CoefficientField::constant("A", 1.0);
  std::vector<DirichletCondition> dirichlet;
  Gauge gauge = Gauge::Dirichlet;
  SpaceTimeFunction potential_forcing;  // g, optional

  int num_species() const { return static_cast<int>(species.size()); }
  double drift_coefficient(int i) const {
    return species[i].valence * unit_charge / (boltzmann * temperature);
  }
  double thermal_energy() const { return boltzmann * temperature; }
  bool has_dirichlet(FieldRef field) const;

  /// Throws InvalidInput for inconsistent data (gauge vs. potential
  /// Dirichlet markers, missing initial densities, non-positive constants).
  void validate() const;
};

/// Right trace (t^{n,-}) of a slab solution: spatial coefficients per field.
struct TraceState {
  double time = 0.0;
  std::vector<std::vector<double>> u;  // one vector per species
  std::vector<double> phi;
};

/// Unknowns of one space-time slab plus its incoming trace.
///
/// `x` uses the assembler's layout: species-major, then temporal mode, then
/// spatial dof; the potential after all species; gauge multipliers last.
struct SlabState {
  double t0 = 0.0;
  double dt = 0.0;
  std::vector<double> x;
  TraceState incoming;
};

}  // namespace stpnp
