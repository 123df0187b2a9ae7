#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stpnp/diagnostics.hpp"
#include "stpnp/fespace.hpp"
#include "stpnp/problem.hpp"
#include "stpnp/timeloop.hpp"

namespace stpnp {

/// Everything needed to reproduce a run: a preset name plus overrides.
/// Unset optionals take the preset's defaults.
struct CaseConfig {
  std::string preset = "example1";
  std::optional<double> h;
  std::optional<int> k;
  std::optional<int> m;
  std::optional<double> dt;
  std::optional<double> tol;
  std::optional<bool> fixed_dt;
  std::optional<double> t_end;
  std::optional<double> steady_threshold;
  std::optional<std::vector<double>> dt_max_times;
  std::optional<std::vector<double>> dt_max_caps;
  std::optional<int> temporal_points;
  std::optional<int> spatial_order;
  std::optional<std::string> mesh_file;
  // example2 coefficient readings: "channel"/"literal" and "union"/"literal"
  std::string permittivity_reading = "channel";
  std::string fixed_charge_reading = "union";
};

struct Case {
  std::string name;
  ProblemSpec spec;
  std::shared_ptr<const Mesh> mesh;
  std::shared_ptr<const SpatialSpace> space;
  RunConfig run;
  double h = 0.0;
  ExactField exact;  // empty when no closed-form solution exists
};

/// Builds the case; throws UnknownPreset or Config.
Case build_case(const CaseConfig& config);

/// Default case for a preset name.
Case preset(const std::string& name);

std::vector<std::string> preset_names();

namespace example1 {
/// Exact fields: c_1 = 1 + s/2, c_2 = 1 - s/2, phi = s with
/// s = sin(t) sin(pi x) sin(pi y).
double density(int species, double t, const Point& x);
double potential(double t, const Point& x);
/// Source terms making the exact fields solve the model with unit constants.
double species_forcing(int species, double t, const Point& x);
double potential_forcing(double t, const Point& x);
}  // namespace example1

namespace example2 {
inline constexpr double kLeft = -28.0;
inline constexpr double kRight = 25.0;
/// Interior breakpoints of all piecewise coefficients.
std::vector<double> breakpoints();
/// Channel radius r(x).
double radius(double x);
}  // namespace example2

}  // namespace stpnp
