#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "stpnp/error.hpp"
#include "stpnp/io.hpp"

using namespace stpnp;

namespace {

DiagnosticsRecord sample_record(int step, bool accepted) {
  DiagnosticsRecord r;
  r.step = step;
  r.time = 0.1 * (step + 1) + 1e-17;
  r.dt = 1.0 / 3.0;
  r.energy = accepted ? -123.456789012345678 : std::nan("");
  r.dissipation_rate = 2.5e-300;
  r.energy_drop_rate = 4.0;
  r.numerical_dissipation = -1e-18;
  r.mass = {1.25, 3.0e8};
  r.outflow = {0.0, -7.5};
  r.min_density = std::exp(-40.0);
  r.newton_iterations = 3;
  r.estimator = 1.7e-4;
  r.accepted = accepted;
  r.attempts = accepted ? 2 : 1;
  return r;
}

void expect_same(double a, double b) {
  if (std::isnan(a))
    EXPECT_TRUE(std::isnan(b));
  else
    EXPECT_EQ(a, b);
}

}  // namespace

TEST(Io, FormatDouble) {
  EXPECT_EQ(format_double(std::nan("")), "nan");
  EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(format_double(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(std::stod(format_double(0.1 + 0.2)), 0.1 + 0.2);
}

TEST(Io, DiagnosticsRoundTrip) {
  const std::vector<DiagnosticsRecord> recs{sample_record(0, false), sample_record(0, true),
                                            sample_record(1, true)};
  std::stringstream ss;
  write_diagnostics(ss, recs, 2);
  const auto back = read_diagnostics(ss);
  ASSERT_EQ(back.size(), recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) {
    const auto& a = recs[i];
    const auto& b = back[i];
    EXPECT_EQ(a.step, b.step);
    expect_same(a.time, b.time);
    expect_same(a.dt, b.dt);
    expect_same(a.energy, b.energy);
    expect_same(a.dissipation_rate, b.dissipation_rate);
    expect_same(a.energy_drop_rate, b.energy_drop_rate);
    expect_same(a.numerical_dissipation, b.numerical_dissipation);
    EXPECT_EQ(a.mass, b.mass);
    EXPECT_EQ(a.outflow, b.outflow);
    expect_same(a.min_density, b.min_density);
    EXPECT_EQ(a.newton_iterations, b.newton_iterations);
    expect_same(a.estimator, b.estimator);
    EXPECT_EQ(a.accepted, b.accepted);
    EXPECT_EQ(a.attempts, b.attempts);
  }
  EXPECT_EQ(diagnostics_columns(2).size(), 16u);
}

TEST(Io, MalformedDiagnosticsRejected) {
  for (const char* text : {"", "step,t\n0,1\n", "step,t,dt\n0,abc,1\n"}) {
    std::stringstream ss(text);
    try {
      read_diagnostics(ss);
      FAIL() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::Parse) << text;
    }
  }
  std::stringstream truncated;
  write_diagnostics_header(truncated, 1);
  truncated << "0,1,2\n";
  EXPECT_THROW(read_diagnostics(truncated), Error);
}

TEST(Io, CaseConfigJsonRoundTrip) {
  CaseConfig c;
  c.preset = "example2";
  c.h = 0.0625;
  c.k = 2;
  c.m = 2;
  c.tol = 1e-4;
  c.fixed_dt = false;
  c.dt_max_times = std::vector<double>{250.0};
  c.dt_max_caps = std::vector<double>{2.0, 200.0};
  c.mesh_file = "a.mesh";
  c.permittivity_reading = "literal";
  const CaseConfig d = case_config_from_json(to_json(c));
  EXPECT_EQ(d.preset, c.preset);
  EXPECT_EQ(d.h, c.h);
  EXPECT_EQ(d.k, c.k);
  EXPECT_EQ(d.m, c.m);
  EXPECT_EQ(d.tol, c.tol);
  EXPECT_EQ(d.fixed_dt, c.fixed_dt);
  EXPECT_FALSE(d.dt.has_value());
  EXPECT_FALSE(d.t_end.has_value());
  EXPECT_EQ(d.dt_max_times, c.dt_max_times);
  EXPECT_EQ(d.dt_max_caps, c.dt_max_caps);
  EXPECT_EQ(d.mesh_file, c.mesh_file);
  EXPECT_EQ(d.permittivity_reading, "literal");
  EXPECT_EQ(d.fixed_charge_reading, "union");
}

TEST(Io, CaseConfigRejectsBadJson) {
  for (const char* text : {R"({"preset":"example1","bogus":1})", R"({"h":"small"})", "{not json"}) {
    try {
      case_config_from_json(text);
      FAIL() << text;
    } catch (const Error& e) {
      EXPECT_TRUE(e.kind() == ErrorKind::Config || e.kind() == ErrorKind::Parse) << text;
    }
  }
  try {
    case_config_from_json(R"({"bogus":1})");
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Config);
  }
  try {
    load_case_config("/nonexistent/dir/case.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Io);
  }
}

TEST(Io, SamplePoints) {
  const auto line = sample_points(1, 4);
  ASSERT_EQ(line.size(), 4u);
  EXPECT_EQ(line[0][0], 0.125);
  EXPECT_EQ(line[3][0], 0.875);
  for (int per : {1, 4, 9}) {
    const auto tri = sample_points(2, per);
    ASSERT_EQ(tri.size(), static_cast<std::size_t>(per));
    double cx = 0.0, cy = 0.0;
    for (const auto& p : tri) {
      EXPECT_GT(p[0], 0.0);
      EXPECT_GT(p[1], 0.0);
      EXPECT_LT(p[0] + p[1], 1.0);
      cx += p[0] / per;
      cy += p[1] / per;
    }
    // Equal-area sub-triangles: the centroids average to the centroid.
    EXPECT_NEAR(cx, 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(cy, 1.0 / 3.0, 1e-15);
  }
  EXPECT_THROW(sample_points(2, 3), Error);
  EXPECT_THROW(sample_points(1, 0), Error);
}
