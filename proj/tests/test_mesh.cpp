#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "stpnp/coefficient.hpp"
#include "stpnp/error.hpp"
#include "stpnp/mesh.hpp"

using namespace stpnp;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::Io;
}

}  // namespace

TEST(Mesh, IntervalCountsAndMarkers) {
  const Mesh m = build_interval_mesh(0.0, 1.0, 4);
  EXPECT_EQ(m.num_vertices(), 5u);
  EXPECT_EQ(m.num_elements(), 4u);
  EXPECT_NEAR(m.total_measure(), 1.0, 1e-15);
  ASSERT_EQ(m.boundary.size(), 2u);
  for (const auto& f : m.boundary) {
    const double x = m.vertices[f.vertices[0]][0];
    EXPECT_EQ(f.marker, x == 0.0 ? 1 : 2);
  }
}

TEST(Mesh, IntervalBreakpointsBecomeVerticesAndRegions) {
  const std::vector<double> bp{-0.3, 0.55};
  const Mesh m = build_interval_mesh(-1.0, 1.0, 4, bp);
  for (double b : bp) {
    bool found = false;
    for (const auto& v : m.vertices) found |= std::abs(v[0] - b) < 1e-14;
    EXPECT_TRUE(found) << b;
  }
  for (std::size_t e = 0; e < m.num_elements(); ++e) {
    const double mid = 0.5 * (m.vertices[m.elements[e][0]][0] + m.vertices[m.elements[e][1]][0]);
    EXPECT_EQ(m.region[e], interval_region(bp, mid));
  }
  EXPECT_NEAR(m.total_measure(), 2.0, 1e-14);
}

TEST(Mesh, IntervalRegionOnBreakpointGoesRight) {
  const std::vector<double> bp{0.0, 1.0};
  EXPECT_EQ(interval_region(bp, -0.5), 0);
  EXPECT_EQ(interval_region(bp, 0.0), 1);
  EXPECT_EQ(interval_region(bp, 0.5), 1);
  EXPECT_EQ(interval_region(bp, 1.0), 2);
}

TEST(Mesh, UnitSquare) {
  for (int n : {1, 2, 5}) {
    const Mesh m = build_unit_square_mesh(n);
    EXPECT_EQ(m.num_vertices(), static_cast<std::size_t>((n + 1) * (n + 1)));
    EXPECT_EQ(m.num_elements(), static_cast<std::size_t>(2 * n * n));
    EXPECT_EQ(m.boundary.size(), static_cast<std::size_t>(4 * n));
    EXPECT_NEAR(m.total_measure(), 1.0, 1e-14);
    for (std::size_t e = 0; e < m.num_elements(); ++e) EXPECT_GT(m.signed_measure(e), 0.0);
    for (const auto& f : m.boundary) EXPECT_EQ(f.marker, 1);
  }
}

TEST(Mesh, ValidateRejectsBadTopology) {
  Mesh m = build_unit_square_mesh(2);
  std::swap(m.elements[0][1], m.elements[0][2]);
  EXPECT_EQ(kind_of([&] { m.validate(); }), ErrorKind::Topology);

  Mesh dangling = build_interval_mesh(0.0, 1.0, 2);
  dangling.vertices.push_back({5.0, 0.0});
  EXPECT_EQ(kind_of([&] { dangling.validate(); }), ErrorKind::Topology);

  Mesh bad_index = build_interval_mesh(0.0, 1.0, 2);
  bad_index.elements[1][1] = 17;
  EXPECT_EQ(kind_of([&] { bad_index.validate(); }), ErrorKind::Topology);
}

TEST(Mesh, SerializeRoundTrip) {
  for (const Mesh& m : {build_unit_square_mesh(3), build_interval_mesh(-2.0, 3.0, 7, std::vector<double>{0.1})}) {
    const Mesh back = load_mesh(serialize_mesh(m));
    EXPECT_EQ(back, m);
  }
}

TEST(Mesh, LoadParsesCommentsAndRejectsGarbage) {
  const char* text =
      "# two intervals\n"
      "1 3 2 2\n"
      "0\n0.5\n1\n"
      "0 0 1\n"
      "1 1 2\n"
      "1 0\n"
      "2 2\n";
  const Mesh m = load_mesh(text);
  EXPECT_EQ(m.num_elements(), 2u);
  EXPECT_EQ(m.region[1], 1);
  EXPECT_EQ(kind_of([] { load_mesh("1 3 2 2\n0\n0.5\n"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { load_mesh("1 2 1 0\n0\nabc\n0 0 1\n"); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { load_mesh_file("/nonexistent/mesh.txt"); }), ErrorKind::Io);
}

TEST(Coefficient, ConstantPiecewiseAndClosedForm) {
  const Point x{0.3, 0.0};
  EXPECT_EQ(CoefficientField()(0, x), 0.0);
  EXPECT_EQ(CoefficientField::constant("a", 2.5)(7, x), 2.5);
  const auto pw = CoefficientField::piecewise("b", {{1, 4.0}, {3, -1.0}}, 9.0);
  EXPECT_EQ(pw(1, x), 4.0);
  EXPECT_EQ(pw(3, x), -1.0);
  EXPECT_EQ(pw(2, x), 9.0);
  const auto cf = CoefficientField::closed_form("c", [](const Point& p) { return 2 * p[0]; });
  EXPECT_DOUBLE_EQ(cf(0, x), 0.6);
  const auto pf = CoefficientField::piecewise_closed_form(
      "d", {{0, [](const Point& p) { return p[0]; }}}, [](const Point&) { return -1.0; });
  EXPECT_DOUBLE_EQ(pf(0, x), 0.3);
  EXPECT_DOUBLE_EQ(pf(5, x), -1.0);
}

TEST(Coefficient, InterfaceValueFollowsElementNotPoint) {
  const std::vector<double> bp{0.5};
  const Mesh m = build_interval_mesh(0.0, 1.0, 2, bp);
  const auto pw = CoefficientField::piecewise("eps", {{0, 1.0}, {1, 40.0}}, 0.0);
  const Point interface{0.5, 0.0};
  EXPECT_EQ(evaluate_coefficient(pw, m, 0, interface), 1.0);
  EXPECT_EQ(evaluate_coefficient(pw, m, 1, interface), 40.0);
}
