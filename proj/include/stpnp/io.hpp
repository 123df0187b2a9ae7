#pragma once

#include <fstream>
#include <iosfwd>
#include <string>
#include <vector>

#include "stpnp/diagnostics.hpp"
#include "stpnp/presets.hpp"

namespace stpnp {

std::vector<std::string> diagnostics_columns(int num_species);
void write_diagnostics_header(std::ostream& os, int num_species);
void write_diagnostics_row(std::ostream& os, const DiagnosticsRecord& rec, int num_species);
void write_diagnostics(std::ostream& os, const std::vector<DiagnosticsRecord>& records,
                       int num_species);
/// Parses the output of write_diagnostics; throws Parse on malformed input.
std::vector<DiagnosticsRecord> read_diagnostics(std::istream& is);

/// Streams records to a CSV file as they arrive.
class DiagnosticsSink {
 public:
  DiagnosticsSink(const std::string& path, int num_species);
  void write(const DiagnosticsRecord& rec);

 private:
  std::ofstream os_;
  int num_species_;
};

/// Reference points of the element-uniform sampling: `per_element` points
/// per element (a perfect square on triangles).
std::vector<Point> sample_points(int dim, int per_element);

/// CSV with columns x[,y],phi,u_1..u_N at the sample points of every element.
void dump_fields(std::ostream& os, const SpatialSpace& space, const TraceState& trace,
                 int per_element = 4);
void dump_fields(const std::string& path, const SpatialSpace& space, const TraceState& trace,
                 int per_element = 4);

std::string to_json(const CaseConfig& config);
/// Unknown keys are rejected with a Config error.
CaseConfig case_config_from_json(const std::string& text);
CaseConfig load_case_config(const std::string& path);

std::string format_double(double v);

}  // namespace stpnp
