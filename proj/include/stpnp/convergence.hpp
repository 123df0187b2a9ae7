#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "stpnp/presets.hpp"

namespace stpnp {

struct ConvergenceRow {
  int cells = 0;  // 1/h
  double h = 0.0;
  std::vector<double> errors;                 // u_1..u_N, phi
  std::vector<std::optional<double>> rates;   // empty optional: first row or round-off
};

struct ConvergenceTable {
  std::vector<std::string> fields;
  std::vector<ConvergenceRow> rows;
};

/// Errors below this are treated as round-off and get no rate.
inline constexpr double kRoundoffError = 1e-11;

/// Observed order between consecutive rows: log(e_prev/e)/log(h_prev/h).
void fill_rates(ConvergenceTable& table);

/// Runs `base` (a preset with an exact solution) on 1/h in `cells` and
/// measures L2 errors of the final trace. Fixed stepping with the preset's
/// dt rule unless base.dt is set.
ConvergenceTable converge(const CaseConfig& base, const std::vector<int>& cells);

void print_table(std::ostream& os, const ConvergenceTable& table);
void write_table_csv(std::ostream& os, const ConvergenceTable& table);

}  // namespace stpnp
