#include <gtest/gtest.h>

#include <cmath>

#include "stpnp/quadrature.hpp"

using namespace stpnp;

namespace {

// int_0^1 x^p dx and int over the reference triangle of x^a y^b.
double interval_moment(int p) { return 1.0 / (p + 1); }
double triangle_moment(int a, int b) {
  return std::tgamma(a + 1) * std::tgamma(b + 1) / std::tgamma(a + b + 3);
}

}  // namespace

TEST(Quadrature, GaussLegendreExactness) {
  for (int n = 1; n <= 8; ++n) {
    const auto r = gauss_legendre(n);
    EXPECT_EQ(r.exactness, 2 * n - 1);
    for (int p = 0; p <= 2 * n - 1; ++p) {
      double s = 0.0;
      for (std::size_t q = 0; q < r.size(); ++q) s += r.weights[q] * std::pow(r.points[q][0], p);
      EXPECT_NEAR(s, interval_moment(p), 1e-14) << n << " " << p;
    }
    // One degree more is not integrated exactly.
    double s = 0.0;
    for (std::size_t q = 0; q < r.size(); ++q) s += r.weights[q] * std::pow(r.points[q][0], 2 * n);
    EXPECT_GT(std::abs(s - interval_moment(2 * n)), 1e-13);
  }
}

TEST(Quadrature, SpatialExactnessSweep) {
  for (int order = 1; order <= 10; ++order) {
    const auto r1 = spatial_quadrature(1, order);
    EXPECT_GE(r1.exactness, order);
    for (int p = 0; p <= order; ++p) {
      double s = 0.0;
      for (std::size_t q = 0; q < r1.size(); ++q) s += r1.weights[q] * std::pow(r1.points[q][0], p);
      EXPECT_NEAR(s, interval_moment(p), 1e-14);
    }
    const auto r2 = spatial_quadrature(2, order);
    EXPECT_GE(r2.exactness, order);
    for (int a = 0; a <= order; ++a)
      for (int b = 0; a + b <= order; ++b) {
        double s = 0.0;
        for (std::size_t q = 0; q < r2.size(); ++q)
          s += r2.weights[q] * std::pow(r2.points[q][0], a) * std::pow(r2.points[q][1], b);
        EXPECT_NEAR(s, triangle_moment(a, b), 1e-14) << order << " " << a << " " << b;
      }
  }
}

TEST(Quadrature, TriangleRulePointsInside) {
  for (int order : {1, 4, 8, 12}) {
    const auto r = spatial_quadrature(2, order);
    for (const auto& p : r.points) {
      EXPECT_GE(p[0], 0.0);
      EXPECT_GE(p[1], 0.0);
      EXPECT_LE(p[0] + p[1], 1.0 + 1e-15);
    }
  }
}

TEST(Quadrature, RadauNodes) {
  EXPECT_EQ(radau_right_nodes(0), std::vector<double>{1.0});
  const auto n1 = radau_right_nodes(1);
  ASSERT_EQ(n1.size(), 2u);
  EXPECT_NEAR(n1[0], 1.0 / 3.0, 1e-15);
  EXPECT_EQ(n1[1], 1.0);
  const auto n2 = radau_right_nodes(2);
  ASSERT_EQ(n2.size(), 3u);
  EXPECT_NEAR(n2[0], (4.0 - std::sqrt(6.0)) / 10.0, 1e-14);
  EXPECT_NEAR(n2[1], (4.0 + std::sqrt(6.0)) / 10.0, 1e-14);
  for (int m = 0; m <= 5; ++m) {
    const auto n = radau_right_nodes(m);
    EXPECT_EQ(n.back(), 1.0);
    for (std::size_t i = 1; i < n.size(); ++i) EXPECT_LT(n[i - 1], n[i]);
  }
}

TEST(Quadrature, LegendreValues) {
  double v, d;
  legendre(2, 0.5, v, d);
  EXPECT_NEAR(v, -0.125, 1e-15);
  EXPECT_NEAR(d, 1.5, 1e-15);
  legendre(5, 1.0, v, d);
  EXPECT_NEAR(v, 1.0, 1e-14);
  EXPECT_NEAR(d, 15.0, 1e-12);
}

TEST(Quadrature, RejectsBadOrders) {
  EXPECT_THROW(spatial_quadrature(2, 0), std::exception);
  EXPECT_THROW(spatial_quadrature(3, 2), std::exception);
}
