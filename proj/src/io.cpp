#include "stpnp/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "stpnp/error.hpp"

namespace stpnp {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> diagnostics_columns(int n) {
  std::vector<std::string> cols = {"step", "t", "dt", "energy", "dissipation_rate",
                                   "energy_drop_rate", "numerical_dissipation"};
  for (int i = 1; i <= n; ++i) cols.push_back("mass_" + std::to_string(i));
  for (int i = 1; i <= n; ++i) cols.push_back("outflow_" + std::to_string(i));
  for (const char* c : {"min_density", "newton_iterations", "estimator", "accepted", "attempts"})
    cols.push_back(c);
  return cols;
}

void write_diagnostics_header(std::ostream& os, int n) {
  const auto cols = diagnostics_columns(n);
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << '\n';
}

void write_diagnostics_row(std::ostream& os, const DiagnosticsRecord& r, int n) {
  auto at = [](const std::vector<double>& v, int i) {
    return i < static_cast<int>(v.size()) ? v[i] : std::nan("");
  };
  os << r.step << ',' << format_double(r.time) << ',' << format_double(r.dt) << ','
     << format_double(r.energy) << ',' << format_double(r.dissipation_rate) << ','
     << format_double(r.energy_drop_rate) << ',' << format_double(r.numerical_dissipation);
  for (int i = 0; i < n; ++i) os << ',' << format_double(at(r.mass, i));
  for (int i = 0; i < n; ++i) os << ',' << format_double(at(r.outflow, i));
  os << ',' << format_double(r.min_density) << ',' << r.newton_iterations << ','
     << format_double(r.estimator) << ',' << (r.accepted ? 1 : 0) << ',' << r.attempts << '\n';
}

void write_diagnostics(std::ostream& os, const std::vector<DiagnosticsRecord>& records, int n) {
  write_diagnostics_header(os, n);
  for (const auto& r : records) write_diagnostics_row(os, r, n);
}

std::vector<DiagnosticsRecord> read_diagnostics(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw Error(ErrorKind::Parse, "diagnostics: missing header");
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) header.push_back(cell);
  }
  int n = 0;
  for (const auto& h : header)
    if (h.rfind("mass_", 0) == 0) ++n;
  if (header != diagnostics_columns(n))
    throw Error(ErrorKind::Parse, "diagnostics: unexpected header");

  std::vector<DiagnosticsRecord> out;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> v;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      char* end = nullptr;
      const double d = std::strtod(cell.c_str(), &end);
      if (cell.empty() || *end != '\0')
        throw Error(ErrorKind::Parse, "diagnostics line " + std::to_string(lineno) + ": bad value '" + cell + "'");
      v.push_back(d);
    }
    if (v.size() != header.size())
      throw Error(ErrorKind::Parse, "diagnostics line " + std::to_string(lineno) + ": wrong column count");
    DiagnosticsRecord r;
    std::size_t c = 0;
    r.step = static_cast<int>(v[c++]);
    r.time = v[c++];
    r.dt = v[c++];
    r.energy = v[c++];
    r.dissipation_rate = v[c++];
    r.energy_drop_rate = v[c++];
    r.numerical_dissipation = v[c++];
    r.mass.assign(v.begin() + c, v.begin() + c + n);
    c += n;
    r.outflow.assign(v.begin() + c, v.begin() + c + n);
    c += n;
    r.min_density = v[c++];
    r.newton_iterations = static_cast<int>(v[c++]);
    r.estimator = v[c++];
    r.accepted = v[c++] != 0.0;
    r.attempts = static_cast<int>(v[c++]);
    out.push_back(std::move(r));
  }
  return out;
}

DiagnosticsSink::DiagnosticsSink(const std::string& path, int num_species)
    : os_(path), num_species_(num_species) {
  if (!os_) throw Error(ErrorKind::Io, "cannot open '" + path + "' for writing");
  write_diagnostics_header(os_, num_species_);
}

void DiagnosticsSink::write(const DiagnosticsRecord& rec) {
  write_diagnostics_row(os_, rec, num_species_);
  os_.flush();
  if (!os_) throw Error(ErrorKind::Io, "write failed on diagnostics file");
}

std::vector<Point> sample_points(int dim, int per_element) {
  if (per_element < 1) throw Error(ErrorKind::Config, "samples per element must be >= 1");
  std::vector<Point> pts;
  if (dim == 1) {
    for (int j = 0; j < per_element; ++j) pts.push_back({(j + 0.5) / per_element, 0.0});
    return pts;
  }
  const int r = static_cast<int>(std::lround(std::sqrt(per_element)));
  if (r * r != per_element)
    throw Error(ErrorKind::Config, "samples per triangle must be a perfect square");
  // Centroids of the sub-triangles of the uniform r-refinement.
  for (int j = 0; j < r; ++j)
    for (int i = 0; i + j < r; ++i) {
      pts.push_back({(i + 1.0 / 3.0) / r, (j + 1.0 / 3.0) / r});
      if (i + j < r - 1) pts.push_back({(i + 2.0 / 3.0) / r, (j + 2.0 / 3.0) / r});
    }
  return pts;
}

void dump_fields(std::ostream& os, const SpatialSpace& space, const TraceState& trace,
                 int per_element) {
  const int dim = space.mesh().dim;
  const auto refs = sample_points(dim, per_element);
  os << (dim == 1 ? "x" : "x,y") << ",phi";
  for (std::size_t i = 1; i <= trace.u.size(); ++i) os << ",u_" << i;
  os << '\n';
  for (std::size_t e = 0; e < space.mesh().num_elements(); ++e)
    for (const Point& ref : refs) {
      const Point x = space.geometry(e).map(ref);
      os << format_double(x[0]);
      if (dim == 2) os << ',' << format_double(x[1]);
      os << ',' << format_double(space.evaluate(trace.phi, e, ref));
      for (const auto& u : trace.u) os << ',' << format_double(space.evaluate(u, e, ref));
      os << '\n';
    }
}

void dump_fields(const std::string& path, const SpatialSpace& space, const TraceState& trace,
                 int per_element) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorKind::Io, "cannot open '" + path + "' for writing");
  dump_fields(os, space, trace, per_element);
  if (!os) throw Error(ErrorKind::Io, "write failed on '" + path + "'");
}

namespace {

template <class T>
void put(nlohmann::ordered_json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

template <class T>
void get(const nlohmann::json& j, const char* key, std::optional<T>& v) {
  if (j.contains(key) && !j[key].is_null()) v = j[key].get<T>();
}

}  // namespace

std::string to_json(const CaseConfig& c) {
  nlohmann::ordered_json j;
  j["preset"] = c.preset;
  put(j, "h", c.h);
  put(j, "k", c.k);
  put(j, "m", c.m);
  put(j, "dt", c.dt);
  put(j, "tol", c.tol);
  put(j, "fixed_dt", c.fixed_dt);
  put(j, "t_end", c.t_end);
  put(j, "steady_threshold", c.steady_threshold);
  put(j, "dt_max_times", c.dt_max_times);
  put(j, "dt_max_caps", c.dt_max_caps);
  put(j, "temporal_points", c.temporal_points);
  put(j, "spatial_order", c.spatial_order);
  put(j, "mesh_file", c.mesh_file);
  j["permittivity_reading"] = c.permittivity_reading;
  j["fixed_charge_reading"] = c.fixed_charge_reading;
  return j.dump(2) + "\n";
}

CaseConfig case_config_from_json(const std::string& text) {
  static const std::set<std::string> known = {
      "preset", "h", "k", "m", "dt", "tol", "fixed_dt", "t_end", "steady_threshold",
      "dt_max_times", "dt_max_caps", "temporal_points", "spatial_order", "mesh_file",
      "permittivity_reading", "fixed_charge_reading"};
  CaseConfig c;
  try {
    const auto j = nlohmann::json::parse(text);
    if (!j.is_object()) throw Error(ErrorKind::Config, "config must be a JSON object");
    for (const auto& [key, value] : j.items())
      if (!known.count(key)) throw Error(ErrorKind::Config, "unknown config key '" + key + "'");
    if (j.contains("preset")) c.preset = j["preset"].get<std::string>();
    get(j, "h", c.h);
    get(j, "k", c.k);
    get(j, "m", c.m);
    get(j, "dt", c.dt);
    get(j, "tol", c.tol);
    get(j, "fixed_dt", c.fixed_dt);
    get(j, "t_end", c.t_end);
    get(j, "steady_threshold", c.steady_threshold);
    get(j, "dt_max_times", c.dt_max_times);
    get(j, "dt_max_caps", c.dt_max_caps);
    get(j, "temporal_points", c.temporal_points);
    get(j, "spatial_order", c.spatial_order);
    get(j, "mesh_file", c.mesh_file);
    if (j.contains("permittivity_reading"))
      c.permittivity_reading = j["permittivity_reading"].get<std::string>();
    if (j.contains("fixed_charge_reading"))
      c.fixed_charge_reading = j["fixed_charge_reading"].get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Config, std::string("config: ") + e.what());
  }
  return c;
}

CaseConfig load_case_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorKind::Io, "cannot open config '" + path + "'");
  std::stringstream ss;
  ss << is.rdbuf();
  return case_config_from_json(ss.str());
}

}  // namespace stpnp
