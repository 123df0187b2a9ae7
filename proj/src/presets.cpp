#include "stpnp/presets.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "stpnp/error.hpp"

namespace stpnp {
namespace {

constexpr double kPi = std::numbers::pi;

int cells_for(double length, double h) {
  const double n = length / h;
  const double r = std::round(n);
  if (!(h > 0.0) || std::abs(n - r) > 1e-8 * std::max(1.0, n) || r < 1)
    throw Error(ErrorKind::Config, "mesh size h must divide the domain length");
  return static_cast<int>(r);
}

DtMaxSchedule schedule_from(const CaseConfig& c, DtMaxSchedule fallback) {
  if (c.dt_max_times) fallback.times = *c.dt_max_times;
  if (c.dt_max_caps) fallback.caps = *c.dt_max_caps;
  return fallback;
}

void apply_common(const CaseConfig& c, Case& out) {
  RunConfig& r = out.run;
  if (c.k) r.k = *c.k;
  if (c.m) r.m = *c.m;
  if (c.dt) r.dt_initial = *c.dt;
  if (c.tol) r.tol = *c.tol;
  if (c.fixed_dt) r.adaptive = !*c.fixed_dt;
  if (c.t_end) {
    r.t_end = *c.t_end;
    r.steady_state = false;
  }
  if (c.steady_threshold) r.steady_threshold = *c.steady_threshold;
  r.dt_max = schedule_from(c, r.dt_max);
  if (c.temporal_points) r.quadrature.temporal_points = *c.temporal_points;
  if (c.spatial_order) r.quadrature.spatial_order = *c.spatial_order;
  r.validate();
  if (c.mesh_file) out.mesh = std::make_shared<Mesh>(load_mesh_file(*c.mesh_file));
  out.space = build_space(out.mesh, r.k);
}

Case build_example1(const CaseConfig& c) {
  Case out;
  out.name = "example1";
  out.h = c.h.value_or(1.0 / 8.0);
  const int n = cells_for(1.0, out.h);
  out.mesh = std::make_shared<Mesh>(build_unit_square_mesh(n));

  ProblemSpec& s = out.spec;
  for (int i = 0; i < 2; ++i) {
    Species sp;
    sp.valence = i == 0 ? 1.0 : -1.0;
    sp.diffusivity = 1.0;
    sp.initial_density = [i](const Point& x) { return example1::density(i, 0.0, x); };
    sp.forcing = [i](double t, const Point& x) { return example1::species_forcing(i, t, x); };
    s.species.push_back(std::move(sp));
  }
  s.potential_forcing = example1::potential_forcing;
  const SpaceTimeFunction one = [](double, const Point&) { return 1.0; };
  const SpaceTimeFunction zero = [](double, const Point&) { return 0.0; };
  s.dirichlet = {{1, FieldRef::species(0), one}, {1, FieldRef::species(1), one},
                 {1, FieldRef::potential(), zero}};
  s.gauge = Gauge::Dirichlet;

  RunConfig& r = out.run;
  r.k = 1;
  r.m = 1;
  r.dt_initial = 2.0 * out.h;
  r.t_end = 1.0;
  r.adaptive = false;
  out.exact = [](int field, double t, const Point& x) {
    return field < 0 ? example1::potential(t, x) : std::log(example1::density(field, t, x));
  };
  apply_common(c, out);
  return out;
}

Case build_example2(const CaseConfig& c) {
  if (c.permittivity_reading != "channel" && c.permittivity_reading != "literal")
    throw Error(ErrorKind::Config, "permittivity reading must be 'channel' or 'literal'");
  if (c.fixed_charge_reading != "union" && c.fixed_charge_reading != "literal")
    throw Error(ErrorKind::Config, "fixed charge reading must be 'union' or 'literal'");

  Case out;
  out.name = "example2";
  out.h = c.h.value_or(1.0 / 16.0);
  const auto bps = example2::breakpoints();
  const int n = cells_for(example2::kRight - example2::kLeft, out.h);
  out.mesh = std::make_shared<Mesh>(build_interval_mesh(example2::kLeft, example2::kRight, n, bps));

  // Region j is the interval between breakpoints j-1 and j.
  auto region_of = [&](double x) { return interval_region(bps, x); };

  ProblemSpec& s = out.spec;
  const double valence[2] = {1.0, -1.0};
  const double diffusivity[2] = {1.0, 1.0383};
  for (int i = 0; i < 2; ++i) {
    Species sp;
    sp.valence = valence[i];
    sp.diffusivity = diffusivity[i];
    sp.initial_density = [](const Point&) { return 1.0; };
    s.species.push_back(std::move(sp));
  }

  // The element's region picks the radius branch, so A jumps exactly at x = -5 and x = 10.
  auto disc = [](double r) { return kPi * r * r; };
  std::map<int, CoefficientField::Function> area;
  area[region_of(-20.0)] = [disc](const Point& x) { return disc(-0.5 * x[0] - 7.0); };
  area[region_of(-10.0)] = [disc](const Point&) { return disc(2.0); };
  area[region_of(20.0)] = [disc](const Point& x) { return disc(0.9 * x[0] - 8.5); };
  s.cross_section = CoefficientField::piecewise_closed_form(
      "A", area, [disc](const Point&) { return disc(0.5); });

  std::map<int, double> eps;
  if (c.permittivity_reading == "channel")
    for (double x = -4.5; x < 10.0; x += 0.5) eps[region_of(x)] = 4.7448;
  s.permittivity = CoefficientField::piecewise("eps", eps, 189.79);

  std::map<int, double> rho;
  for (double mid : {-1.5, 0.5, 2.5, 4.5, 6.5})
    if (c.fixed_charge_reading == "union" || mid > 2.0) rho[region_of(mid)] = -300.0;
  s.fixed_charge = CoefficientField::piecewise("rho0", rho, 0.0);

  const SpaceTimeFunction one = [](double, const Point&) { return 1.0; };
  const SpaceTimeFunction zero = [](double, const Point&) { return 0.0; };
  for (int marker : {1, 2})
    for (auto f : {FieldRef::species(0), FieldRef::species(1)})
      s.dirichlet.push_back({marker, f, one});
  s.dirichlet.push_back({1, FieldRef::potential(), zero});
  s.dirichlet.push_back({2, FieldRef::potential(), zero});
  s.gauge = Gauge::Dirichlet;

  RunConfig& r = out.run;
  r.k = 1;
  r.m = 1;
  r.dt_initial = 1e-4;
  r.tol = 1e-3;
  r.adaptive = true;
  r.steady_state = true;
  r.steady_threshold = 1e-13;
  r.dt_max.times = {250.0};
  r.dt_max.caps = {2.0, 200.0};
  apply_common(c, out);
  return out;
}

}  // namespace

namespace example1 {

double density(int species, double t, const Point& x) {
  const double s = std::sin(t) * std::sin(kPi * x[0]) * std::sin(kPi * x[1]);
  return species == 0 ? 1.0 + 0.5 * s : 1.0 - 0.5 * s;
}

double potential(double t, const Point& x) {
  return std::sin(t) * std::sin(kPi * x[0]) * std::sin(kPi * x[1]);
}

// With S = sin(pi x) sin(pi y): Lap S = -2 pi^2 S, and for c = 1 +- s S/2,
// div(grad c +- c grad phi) = Lap c +- grad c . grad phi +- c Lap phi.
double species_forcing(int species, double t, const Point& x) {
  const double sx = std::sin(kPi * x[0]), sy = std::sin(kPi * x[1]);
  const double cx = std::cos(kPi * x[0]), cy = std::cos(kPi * x[1]);
  const double S = sx * sy;
  const double grad2 = kPi * kPi * (cx * cx * sy * sy + sx * sx * cy * cy);
  const double st = std::sin(t), ct = std::cos(t);
  const double sign = species == 0 ? 1.0 : -1.0;
  const double c = 1.0 + sign * 0.5 * st * S;
  const double dc_dt = sign * 0.5 * ct * S;
  const double lap_c = -sign * kPi * kPi * st * S;
  const double grad_c_grad_phi = sign * 0.5 * st * st * grad2;
  const double lap_phi = -2.0 * kPi * kPi * st * S;
  const double flux_div = lap_c + sign * (grad_c_grad_phi + c * lap_phi);
  return dc_dt - flux_div;
}

double potential_forcing(double t, const Point& x) {
  const double s = potential(t, x);
  // -Lap phi - (c_1 - c_2)
  return 2.0 * kPi * kPi * s - s;
}

}  // namespace example1

namespace example2 {

std::vector<double> breakpoints() {
  return {-18.0, -5.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 10.0};
}

double radius(double x) {
  if (x < -18.0) return -0.5 * x - 7.0;
  if (x < -5.0) return 2.0;
  if (x < 10.0) return 0.5;
  return 0.9 * x - 8.5;
}

}  // namespace example2

std::vector<std::string> preset_names() { return {"example1", "example2"}; }

Case build_case(const CaseConfig& config) {
  if (config.preset == "example1") return build_example1(config);
  if (config.preset == "example2") return build_example2(config);
  throw Error(ErrorKind::UnknownPreset, "unknown preset '" + config.preset + "'");
}

Case preset(const std::string& name) {
  CaseConfig c;
  c.preset = name;
  return build_case(c);
}

}  // namespace stpnp
