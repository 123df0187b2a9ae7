#include "stpnp/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "stpnp/error.hpp"

namespace stpnp {

void legendre(int n, double x, double& value, double& derivative) {
  double p0 = 1.0, p1 = x;
  if (n == 0) {
    value = 1.0;
    derivative = 0.0;
    return;
  }
  for (int j = 2; j <= n; ++j) {
    const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
    p0 = p1;
    p1 = p2;
  }
  value = p1;
  // P_n' from the three-term identity; valid off the endpoints.
  if (std::abs(x) == 1.0) {
    derivative = 0.5 * n * (n + 1) * std::pow(x, n + 1);
  } else {
    derivative = n * (x * p1 - p0) / (x * x - 1.0);
  }
}

QuadratureRule gauss_legendre(int npts) {
  if (npts < 1) throw Error(ErrorKind::InvalidInput, "quadrature needs at least one point");
  QuadratureRule rule;
  rule.dim = 1;
  rule.exactness = 2 * npts - 1;
  rule.points.resize(npts);
  rule.weights.resize(npts);
  for (int i = 0; i < npts; ++i) {
    // Newton from the Chebyshev-like initial guess, root i of P_n on [-1,1].
    double x = std::cos(std::numbers::pi * (i + 0.75) / (npts + 0.5));
    double p = 0.0, dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      legendre(npts, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    legendre(npts, x, p, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // Map to [0,1] in ascending order.
    rule.points[npts - 1 - i] = {0.5 * (x + 1.0), 0.0};
    rule.weights[npts - 1 - i] = 0.5 * w;
  }
  return rule;
}

QuadratureRule temporal_quadrature(int npts) { return gauss_legendre(npts); }

QuadratureRule spatial_quadrature(int dim, int order) {
  if (order < 1) throw Error(ErrorKind::InvalidInput, "quadrature order must be >= 1");
  if (dim == 1) {
    QuadratureRule rule = gauss_legendre((order + 2) / 2);
    return rule;
  }
  if (dim != 2) throw Error(ErrorKind::InvalidInput, "quadrature dimension must be 1 or 2");
  QuadratureRule rule;
  rule.dim = 2;
  if (order == 1) {
    rule.points = {{1.0 / 3.0, 1.0 / 3.0}};
    rule.weights = {0.5};
    rule.exactness = 1;
    return rule;
  }
  if (order == 2) {
    rule.points = {{1.0 / 6.0, 1.0 / 6.0}, {2.0 / 3.0, 1.0 / 6.0}, {1.0 / 6.0, 2.0 / 3.0}};
    rule.weights = {1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0};
    rule.exactness = 2;
    return rule;
  }
  // Collapsed (Duffy) tensor rule: x = s, y = t (1 - s), dx dy = (1 - s) ds dt.
  const int n = (order + 3) / 2;
  const QuadratureRule gs = gauss_legendre(n);
  const QuadratureRule gt = gauss_legendre((order + 2) / 2);
  for (std::size_t i = 0; i < gs.size(); ++i) {
    const double s = gs.points[i][0];
    for (std::size_t j = 0; j < gt.size(); ++j) {
      const double t = gt.points[j][0];
      rule.points.push_back({s, t * (1.0 - s)});
      rule.weights.push_back(gs.weights[i] * gt.weights[j] * (1.0 - s));
    }
  }
  rule.exactness = order;
  return rule;
}

std::vector<double> radau_right_nodes(int m) {
  if (m < 0) throw Error(ErrorKind::InvalidInput, "temporal degree must be >= 0");
  // Right Radau nodes on [-1,1] are the zeros of P_{m+1} - P_m; x = 1 is one
  // of them and the other m lie in (-1, 1). Locate them by bracketing on a
  // fine grid and bisecting.
  auto q = [m](double x) {
    double pa, da, pb, db;
    legendre(m + 1, x, pa, da);
    legendre(m, x, pb, db);
    return pa - pb;
  };
  std::vector<double> nodes;
  const int samples = 2000 * (m + 1);
  double xa = -1.0, fa = q(xa);
  for (int s = 1; s <= samples && static_cast<int>(nodes.size()) < m; ++s) {
    const double xb = -1.0 + 2.0 * s / samples;
    const double fb = q(xb);
    if (xb >= 1.0) break;
    if (fa == 0.0) {
      nodes.push_back(xa);
    } else if (fa * fb < 0.0) {
      double lo = xa, hi = xb, flo = fa;
      for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = q(mid);
        if ((fm < 0) == (flo < 0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      nodes.push_back(0.5 * (lo + hi));
    }
    xa = xb;
    fa = fb;
  }
  if (static_cast<int>(nodes.size()) != m)
    throw Error(ErrorKind::InvalidInput, "failed to locate Radau nodes");
  for (double& x : nodes) x = 0.5 * (x + 1.0);
  nodes.push_back(1.0);
  return nodes;
}

}  // namespace stpnp
