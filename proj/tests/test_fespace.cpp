#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <random>

#include "stpnp/error.hpp"
#include "stpnp/fespace.hpp"

using namespace stpnp;

namespace {

std::vector<Point> probe_points(int dim) {
  if (dim == 1) return {{0.0, 0.0}, {0.17, 0.0}, {0.5, 0.0}, {0.93, 0.0}, {1.0, 0.0}};
  return {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {0.2, 0.3}, {0.6, 0.1}, {0.25, 0.7}};
}

}  // namespace

TEST(ReferenceElement, KroneckerAndPartitionOfUnity) {
  for (int dim : {1, 2})
    for (int k = 1; k <= 4; ++k) {
      ReferenceElement ref(dim, k);
      const int n = ref.num_nodes();
      EXPECT_EQ(n, dim == 1 ? k + 1 : (k + 1) * (k + 2) / 2);
      std::vector<double> v(n);
      std::vector<Point> g(n);
      for (int a = 0; a < n; ++a) {
        ref.evaluate(ref.node_point(a), v, g);
        for (int b = 0; b < n; ++b) EXPECT_NEAR(v[b], a == b ? 1.0 : 0.0, 1e-12);
      }
      for (const Point& p : probe_points(dim)) {
        ref.evaluate(p, v, g);
        double s = 0.0, gx = 0.0, gy = 0.0;
        for (int a = 0; a < n; ++a) {
          s += v[a];
          gx += g[a][0];
          gy += g[a][1];
        }
        EXPECT_NEAR(s, 1.0, 1e-12);
        EXPECT_NEAR(gx, 0.0, 1e-10);
        EXPECT_NEAR(gy, 0.0, 1e-10);
      }
    }
}

TEST(ReferenceElement, GradientsMatchFiniteDifferences) {
  ReferenceElement ref(2, 3);
  const int n = ref.num_nodes();
  std::vector<double> v(n), vp(n), vm(n);
  std::vector<Point> g(n), dummy(n);
  const Point p{0.21, 0.37};
  const double h = 1e-6;
  ref.evaluate(p, v, g);
  for (int d = 0; d < 2; ++d) {
    Point pp = p, pm = p;
    pp[d] += h;
    pm[d] -= h;
    ref.evaluate(pp, vp, dummy);
    ref.evaluate(pm, vm, dummy);
    for (int a = 0; a < n; ++a) EXPECT_NEAR(g[a][d], (vp[a] - vm[a]) / (2 * h), 1e-7);
  }
}

TEST(ReferenceElement, RejectsDegreeZero) {
  try {
    ReferenceElement ref(1, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedDegree);
  }
}

TEST(SpatialSpace, DofCounts) {
  auto sq = std::make_shared<const Mesh>(build_unit_square_mesh(4));
  for (int k = 1; k <= 3; ++k)
    EXPECT_EQ(build_space(sq, k)->num_dofs(), static_cast<std::size_t>((4 * k + 1) * (4 * k + 1)));
  auto line = std::make_shared<const Mesh>(build_interval_mesh(0.0, 1.0, 5));
  EXPECT_EQ(build_space(line, 2)->num_dofs(), 11u);
}

TEST(SpatialSpace, InterpolationReproducesPolynomials) {
  auto mesh = std::make_shared<const Mesh>(build_unit_square_mesh(3));
  for (int k = 1; k <= 3; ++k) {
    auto space = build_space(mesh, k);
    auto poly = [k](const Point& x) { return std::pow(x[0] + 2 * x[1] - 0.3, k) + x[0] * x[1]; };
    if (k == 1) continue;  // x*y is not in P1
    const auto c = space->interpolate(poly);
    for (std::size_t e = 0; e < mesh->num_elements(); ++e)
      for (const Point& r : probe_points(2)) {
        const Point x = space->geometry(e).map(r);
        EXPECT_NEAR(space->evaluate(c, e, r), poly(x), 1e-12);
      }
  }
  auto space1 = build_space(mesh, 1);
  auto lin = [](const Point& x) { return 3 * x[0] - x[1] + 0.5; };
  const auto c1 = space1->interpolate(lin);
  for (std::size_t e = 0; e < mesh->num_elements(); ++e) {
    const auto bv = eval_basis(*space1, e, {0.3, 0.3});
    Point g{0.0, 0.0};
    auto dofs = space1->element_dofs(e);
    for (std::size_t a = 0; a < dofs.size(); ++a) {
      g[0] += c1[dofs[a]] * bv.gradients[a][0];
      g[1] += c1[dofs[a]] * bv.gradients[a][1];
    }
    EXPECT_NEAR(g[0], 3.0, 1e-12);
    EXPECT_NEAR(g[1], -1.0, 1e-12);
  }
}

TEST(SpatialSpace, SharedDofsAreContinuous) {
  auto mesh = std::make_shared<const Mesh>(build_unit_square_mesh(2));
  auto space = build_space(mesh, 3);
  for (std::size_t e = 0; e < mesh->num_elements(); ++e) {
    auto dofs = space->element_dofs(e);
    for (int a = 0; a < space->dofs_per_element(); ++a) {
      const Point x = space->geometry(e).map(space->reference().node_point(a));
      const Point& d = space->dof_point(dofs[a]);
      EXPECT_NEAR(x[0], d[0], 1e-14);
      EXPECT_NEAR(x[1], d[1], 1e-14);
    }
  }
}

TEST(SpatialSpace, BoundaryDofs) {
  auto mesh = std::make_shared<const Mesh>(build_unit_square_mesh(3));
  auto space = build_space(mesh, 2);
  const auto& b = space->boundary_dofs(1);
  EXPECT_EQ(b.size(), 4u * 6u);
  for (int d : b) {
    const Point& x = space->dof_point(d);
    const bool on = x[0] < 1e-14 || x[1] < 1e-14 || x[0] > 1 - 1e-14 || x[1] > 1 - 1e-14;
    EXPECT_TRUE(on);
  }
  EXPECT_TRUE(space->boundary_dofs(9).empty());
}

TEST(TemporalBasis, DerivativeOfMonomial) {
  for (int m = 1; m <= 4; ++m) {
    const TemporalBasis b = TemporalBasis::radau(m);
    const auto& nodes = b.nodes();
    for (double tau : {0.0, 0.13, 0.5, 0.77, 1.0}) {
      double v = 0.0, d = 0.0;
      for (int a = 0; a < b.size(); ++a) {
        v += std::pow(nodes[a], m) * b.value(a, tau);
        d += std::pow(nodes[a], m) * b.derivative(a, tau);
      }
      EXPECT_NEAR(v, std::pow(tau, m), 1e-12);
      EXPECT_NEAR(d, m * std::pow(tau, m - 1), 1e-11);
    }
  }
}

TEST(TemporalBasis, KroneckerAtNodes) {
  const TemporalBasis b = TemporalBasis::gauss(2);
  EXPECT_EQ(b.degree(), 2);
  for (int a = 0; a < b.size(); ++a)
    for (int c = 0; c < b.size(); ++c) EXPECT_NEAR(b.value(a, b.nodes()[c]), a == c ? 1.0 : 0.0, 1e-14);
  const TemporalBasis r0 = TemporalBasis::radau(0);
  EXPECT_EQ(r0.value(0, 0.3), 1.0);
  EXPECT_EQ(r0.derivative(0, 0.3), 0.0);
}
