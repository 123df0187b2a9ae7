#include "stpnp/convergence.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "stpnp/error.hpp"
#include "stpnp/io.hpp"

namespace stpnp {

void fill_rates(ConvergenceTable& t) {
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    auto& row = t.rows[r];
    row.rates.assign(row.errors.size(), std::nullopt);
    if (r == 0) continue;
    const auto& prev = t.rows[r - 1];
    for (std::size_t f = 0; f < row.errors.size(); ++f) {
      const double a = prev.errors[f], b = row.errors[f];
      if (a < kRoundoffError || b < kRoundoffError) continue;
      row.rates[f] = std::log(a / b) / std::log(prev.h / row.h);
    }
  }
}

ConvergenceTable converge(const CaseConfig& base, const std::vector<int>& cells) {
  if (cells.size() < 2) throw Error(ErrorKind::Config, "convergence study needs at least two meshes");
  ConvergenceTable table;
  for (int n : cells) {
    if (n < 1) throw Error(ErrorKind::Config, "mesh counts must be positive");
    CaseConfig c = base;
    c.h = 1.0 / n;
    Case cs = build_case(c);
    if (!cs.exact) throw Error(ErrorKind::Config, "preset '" + cs.name + "' has no exact solution");
    if (!c.fixed_dt) cs.run.adaptive = false;
    const RunResult res = run(cs.spec, cs.space, cs.run);
    SlabAssembler probe(cs.spec, cs.space, 0, cs.run.quadrature);
    ConvergenceRow row;
    row.cells = n;
    row.h = cs.h;
    row.errors = l2_error(probe, res.final_state, cs.exact, res.final_state.time);
    if (table.fields.empty()) {
      for (int i = 1; i <= cs.spec.num_species(); ++i) table.fields.push_back("u_" + std::to_string(i));
      table.fields.push_back("phi");
    }
    table.rows.push_back(std::move(row));
  }
  fill_rates(table);
  return table;
}

void print_table(std::ostream& os, const ConvergenceTable& t) {
  char buf[64];
  os << "  1/h";
  for (const auto& f : t.fields) {
    std::snprintf(buf, sizeof buf, " %12s %6s", ("err " + f).c_str(), "rate");
    os << buf;
  }
  os << '\n';
  for (const auto& row : t.rows) {
    std::snprintf(buf, sizeof buf, "%5d", row.cells);
    os << buf;
    for (std::size_t f = 0; f < row.errors.size(); ++f) {
      std::snprintf(buf, sizeof buf, " %12.3e", row.errors[f]);
      os << buf;
      if (row.rates[f]) {
        std::snprintf(buf, sizeof buf, " %6.3f", *row.rates[f]);
        os << buf;
      } else {
        os << "      -";
      }
    }
    os << '\n';
  }
}

void write_table_csv(std::ostream& os, const ConvergenceTable& t) {
  os << "cells,h";
  for (const auto& f : t.fields) os << ",err_" << f << ",rate_" << f;
  os << '\n';
  for (const auto& row : t.rows) {
    os << row.cells << ',' << format_double(row.h);
    for (std::size_t f = 0; f < row.errors.size(); ++f)
      os << ',' << format_double(row.errors[f]) << ','
         << (row.rates[f] ? format_double(*row.rates[f]) : "-");
    os << '\n';
  }
}

}  // namespace stpnp
