#pragma once

#include <vector>

#include "stpnp/mesh.hpp"

namespace stpnp {

/// Quadrature on a reference domain: [0,1] (dim 1) or the triangle with
/// vertices (0,0), (1,0), (0,1) (dim 2).
struct QuadratureRule {
  int dim = 1;
  std::vector<Point> points;
  std::vector<double> weights;
  int exactness = 0;  // highest total polynomial degree integrated exactly

  std::size_t size() const { return weights.size(); }
};

/// Gauss-Legendre rule with `npts` points on [0,1]; exact to degree 2*npts-1.
QuadratureRule gauss_legendre(int npts);

/// Rule used for time integration over a slab (Gauss-Legendre on [0,1]).
QuadratureRule temporal_quadrature(int npts);

/// Rule on the reference simplex exact to total degree `order`.
QuadratureRule spatial_quadrature(int dim, int order);

/// The m+1 right Gauss-Radau nodes on [0,1], ascending, last node = 1.
std::vector<double> radau_right_nodes(int m);

/// Legendre polynomial P_n and its derivative at x in [-1,1].
void legendre(int n, double x, double& value, double& derivative);

}  // namespace stpnp
