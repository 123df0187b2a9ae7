// Command-line driver: solve, converge, check.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "stpnp/convergence.hpp"
#include "stpnp/diagnostics.hpp"
#include "stpnp/error.hpp"
#include "stpnp/io.hpp"
#include "stpnp/presets.hpp"
#include "stpnp/timeloop.hpp"

namespace fs = std::filesystem;
using namespace stpnp;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidInput:
    case ErrorKind::Parse:
    case ErrorKind::Topology:
    case ErrorKind::UnsupportedDegree:
    case ErrorKind::UnknownPreset:
    case ErrorKind::Config:
    case ErrorKind::InvalidBoundaryData:
    case ErrorKind::Io:
      return kExitConfig;
    default:
      return kExitSolver;
  }
}

struct Overrides {
  std::string preset;
  std::string config;
  std::optional<int> k, m;
  std::optional<double> h, dt, tol, tend;
  bool fixed_dt = false;
  std::optional<std::string> mesh;
  std::optional<std::string> eps_reading, rho_reading;
};

void add_overrides(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--preset", o.preset, "example1 or example2");
  cmd->add_option("--config", o.config, "JSON case file (overrides below win)");
  cmd->add_option("--k", o.k, "spatial degree")->check(CLI::PositiveNumber);
  cmd->add_option("--m", o.m, "temporal degree")->check(CLI::NonNegativeNumber);
  cmd->add_option("--h", o.h, "mesh size")->check(CLI::PositiveNumber);
  cmd->add_option("--dt", o.dt, "initial (or fixed) time step")->check(CLI::PositiveNumber);
  cmd->add_option("--tol", o.tol, "estimator tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--tend", o.tend, "end time (disables steady-state stop)");
  cmd->add_flag("--fixed-dt", o.fixed_dt, "constant step, no companion estimator");
  cmd->add_option("--mesh", o.mesh, "mesh file replacing the preset mesh");
  cmd->add_option("--permittivity-reading", o.eps_reading, "example2: channel | literal");
  cmd->add_option("--fixed-charge-reading", o.rho_reading, "example2: union | literal");
}

CaseConfig resolve(const Overrides& o) {
  CaseConfig c;
  if (!o.config.empty()) c = load_case_config(o.config);
  if (!o.preset.empty()) c.preset = o.preset;
  if (o.config.empty() && o.preset.empty())
    throw Error(ErrorKind::Config, "either --preset or --config is required");
  if (o.k) c.k = o.k;
  if (o.m) c.m = o.m;
  if (o.h) c.h = o.h;
  if (o.dt) c.dt = o.dt;
  if (o.tol) c.tol = o.tol;
  if (o.tend) c.t_end = o.tend;
  if (o.fixed_dt) c.fixed_dt = true;
  if (o.mesh) c.mesh_file = o.mesh;
  if (o.eps_reading) c.permittivity_reading = *o.eps_reading;
  if (o.rho_reading) c.fixed_charge_reading = *o.rho_reading;
  return c;
}

int cmd_solve(const Overrides& o, const std::string& out_dir, std::vector<double> dump_at,
              int samples) {
  const CaseConfig cfg = resolve(o);
  Case cs = build_case(cfg);
  const int n = cs.spec.num_species();
  fs::create_directories(out_dir);
  {
    std::ofstream echo(fs::path(out_dir) / "config.json");
    echo << to_json(cfg);
  }
  DiagnosticsSink sink((fs::path(out_dir) / "diagnostics.csv").string(), n);
  std::sort(dump_at.begin(), dump_at.end());
  std::size_t next_dump = 0;
  auto observer = [&](const DiagnosticsRecord& rec, const TraceState& state) {
    sink.write(rec);
    std::fprintf(stderr, "step %5d t=%-12.6g dt=%-10.4g E=%-.10g newton=%d e=%.3g %s\n", rec.step,
                 rec.time, rec.dt, rec.energy, rec.newton_iterations, rec.estimator,
                 rec.accepted ? "" : "rejected");
    while (rec.accepted && next_dump < dump_at.size() && state.time >= dump_at[next_dump]) {
      char name[64];
      std::snprintf(name, sizeof name, "fields_t%g.csv", dump_at[next_dump]);
      dump_fields((fs::path(out_dir) / name).string(), *cs.space, state, samples);
      ++next_dump;
    }
  };
  const RunResult res = run(cs.spec, cs.space, cs.run, observer);
  dump_fields((fs::path(out_dir) / "fields_final.csv").string(), *cs.space, res.final_state, samples);

  long attempts = static_cast<long>(res.records.size());
  std::printf("preset         %s\n", cs.name.c_str());
  std::printf("k, m, h        %d, %d, %g\n", cs.run.k, cs.run.m, cs.h);
  std::printf("initial energy %.10g\n", res.initial_energy);
  std::printf("final energy   %.10g\n", res.records.empty() ? res.initial_energy : res.records.back().energy);
  std::printf("final time     %.10g\n", res.final_state.time);
  std::printf("accepted steps %ld\n", res.accepted_steps);
  std::printf("rejected       %ld\n", attempts - res.accepted_steps);
  if (cs.exact) {
    SlabAssembler probe(cs.spec, cs.space, 0, cs.run.quadrature);
    const auto err = l2_error(probe, res.final_state, cs.exact, res.final_state.time);
    for (int i = 0; i < n; ++i) std::printf("L2 error u_%d   %.4e\n", i + 1, err[i]);
    std::printf("L2 error phi   %.4e\n", err[n]);
  }
  return 0;
}

int cmd_converge(const Overrides& o, const std::string& meshes, const std::string& out_dir) {
  const CaseConfig cfg = resolve(o);
  std::vector<int> cells;
  std::stringstream ss(meshes);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      cells.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw Error(ErrorKind::Config, "bad mesh list entry '" + tok + "'");
    }
  }
  const ConvergenceTable t = converge(cfg, cells);
  print_table(std::cout, t);
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    std::ofstream os(fs::path(out_dir) / "convergence.csv");
    write_table_csv(os, t);
  }
  return 0;
}

// Invariant checks on small built-in cases.
bool report(const char* name, bool ok, const std::string& detail) {
  std::printf("%s  %-40s %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
  return ok;
}

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

int cmd_check() {
  bool all = true;

  // Jacobian against central differences on a perturbed Example 1 slab.
  {
    CaseConfig c;
    c.preset = "example1";
    c.h = 0.5;
    Case cs = build_case(c);
    SlabAssembler a(cs.spec, cs.space, 1);
    SlabState s = a.initial_guess(a.initial_state(0.0), 0.0, 0.3);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> d(-0.3, 0.3);
    for (double& v : s.x) v += d(rng);
    const auto J = a.jacobian(s).to_dense();
    const std::size_t n = a.num_unknowns();
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      SlabState p = s, q = s;
      const double eps = 1e-6;
      p.x[j] += eps;
      q.x[j] -= eps;
      const auto fp = a.residual(p), fq = a.residual(q);
      for (std::size_t i = 0; i < n; ++i) {
        const double fd = (fp[i] - fq[i]) / (2 * eps);
        worst = std::max(worst, std::abs(fd - J[i * n + j]) / (1.0 + std::abs(J[i * n + j])));
      }
    }
    all &= report("jacobian vs finite differences", worst < 1e-5, fmt("max scaled diff %.2e", worst));
  }

  // Closed system at equilibrium: mass and energy are stationary.
  {
    ProblemSpec spec;
    for (int i = 0; i < 2; ++i) {
      Species sp;
      sp.valence = i ? -1.0 : 1.0;
      sp.initial_density = [i](const Point& x) { return 1.0 + (i ? 0.3 : -0.2) * std::cos(3.14159 * x[0]); };
      spec.species.push_back(sp);
    }
    spec.gauge = Gauge::ZeroMean;
    auto mesh = std::make_shared<Mesh>(build_interval_mesh(0.0, 1.0, 16));
    auto space = build_space(mesh, 1);
    RunConfig rc;
    rc.dt_initial = 0.05;
    rc.t_end = 0.5;
    rc.adaptive = false;
    const RunResult r = run(spec, space, rc);
    double mass_drift = 0.0, rise = -1e300;
    double prev = r.initial_energy;
    for (const auto& rec : r.records) {
      for (int i = 0; i < 2; ++i)
        mass_drift = std::max(mass_drift, std::abs(rec.mass[i] - r.initial_mass[i]) / r.initial_mass[i]);
      rise = std::max(rise, rec.energy - prev);
      prev = rec.energy;
    }
    all &= report("mass conservation (closed system)", mass_drift < 1e-10, fmt("max rel drift %.2e", mass_drift));
    all &= report("energy decay (closed system)", rise <= 1e-12, fmt("max rise %.2e", rise));
  }

  // Short coarse Example 2 run: positivity, energy decay, dissipation bound.
  {
    CaseConfig c;
    c.preset = "example2";
    c.h = 0.5;
    c.t_end = 5.0;
    Case cs = build_case(c);
    const RunResult r = run(cs.spec, cs.space, cs.run);
    double prev = r.initial_energy, worst_rise = -1e300, worst_bound = -1e300, min_c = 1e300;
    for (const auto& rec : r.records) {
      if (!rec.accepted) continue;
      const double tau = 1e-8 * (1.0 + std::abs(prev));
      worst_rise = std::max(worst_rise, rec.energy - prev - tau);
      worst_bound = std::max(worst_bound, rec.dissipation_rate * rec.dt - (prev - rec.energy) - tau);
      min_c = std::min(min_c, rec.min_density);
      prev = rec.energy;
    }
    all &= report("positivity", min_c > 0.0, fmt("min density %.3e", min_c));
    all &= report("energy monotonicity", worst_rise <= 0.0, fmt("worst excess %.2e", worst_rise));
    all &= report("dissipation bound", worst_bound <= 0.0, fmt("worst excess %.2e", worst_bound));
  }
  return all ? 0 : kExitSolver;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Space-time finite elements for Poisson-Nernst-Planck"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);

  Overrides solve_o, conv_o;
  std::string out_dir = "out";
  std::vector<double> dump_at;
  int samples = 4;
  auto* solve = app.add_subcommand("solve", "run a preset or config file");
  add_overrides(solve, solve_o);
  solve->add_option("--out", out_dir, "output directory");
  solve->add_option("--dump-at", dump_at, "times at which to dump fields")->delimiter(',');
  solve->add_option("--samples", samples, "field samples per element")->check(CLI::PositiveNumber);

  std::string meshes = "8,16,32";
  std::string conv_out;
  auto* conv = app.add_subcommand("converge", "L2 errors and rates over a mesh sequence");
  add_overrides(conv, conv_o);
  conv->add_option("--meshes", meshes, "comma-separated 1/h values");
  conv->add_option("--out", conv_out, "directory for convergence.csv");

  auto* check = app.add_subcommand("check", "invariant checks on small built-in cases");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (*solve) return cmd_solve(solve_o, out_dir, dump_at, samples);
    if (*conv) return cmd_converge(conv_o, meshes, conv_out);
    if (*check) return cmd_check();
  } catch (const Error& e) {
    std::fprintf(stderr, "error (%s): %s\n", to_string(e.kind()), e.what());
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitSolver;
  }
  return 0;
}
