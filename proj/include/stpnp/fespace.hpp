#pragma once

#include <functional>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "stpnp/mesh.hpp"
#include "stpnp/quadrature.hpp"

namespace stpnp {

/// Lagrange basis of P_k on the reference simplex with equispaced nodes.
///
/// Local node order: vertices, then edge interiors (2D, edges (0,1), (1,2),
/// (2,0), each ordered away from its first vertex), then cell interiors.
class ReferenceElement {
 public:
  ReferenceElement(int dim, int degree);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }

  /// Barycentric multi-index (times degree) of local node `a`.
  const std::array<int, 3>& node_index(int a) const { return nodes_[a]; }
  Point node_point(int a) const;

  /// Values and reference gradients (d/dxi, d/deta) at `ref`.
  void evaluate(const Point& ref, std::span<double> values,
                std::span<Point> ref_gradients) const;

 private:
  int dim_;
  int degree_;
  std::vector<std::array<int, 3>> nodes_;
};

/// Affine map data of one element.
struct ElementGeometry {
  Point origin{};
  std::array<std::array<double, 2>, 2> jacobian{};      // d x / d ref
  std::array<std::array<double, 2>, 2> inv_jacobian{};  // d ref / d x
  double det = 0.0;

  Point map(const Point& ref) const;
  Point physical_gradient(const Point& ref_gradient) const;
};

/// H1-conforming nodal P_k space on a simplicial mesh.
class SpatialSpace {
 public:
  SpatialSpace(std::shared_ptr<const Mesh> mesh, int degree);

  const Mesh& mesh() const { return *mesh_; }
  std::shared_ptr<const Mesh> mesh_ptr() const { return mesh_; }
  int degree() const { return degree_; }
  const ReferenceElement& reference() const { return ref_; }
  std::size_t num_dofs() const { return points_.size(); }
  int dofs_per_element() const { return ref_.num_nodes(); }

  std::span<const int> element_dofs(std::size_t e) const {
    return {elem_dofs_.data() + e * dofs_per_element(),
            static_cast<std::size_t>(dofs_per_element())};
  }
  const ElementGeometry& geometry(std::size_t e) const { return geometry_[e]; }
  const Point& dof_point(std::size_t d) const { return points_[d]; }
  const std::vector<Point>& dof_points() const { return points_; }

  /// Sorted, unique dofs on facets carrying `marker` (empty if none).
  const std::vector<int>& boundary_dofs(int marker) const;
  std::vector<int> boundary_markers() const;

  /// Nodal interpolant of f.
  std::vector<double> interpolate(const std::function<double(const Point&)>& f) const;

  /// Evaluates a finite element function inside element `e` at `ref`.
  double evaluate(std::span<const double> coeffs, std::size_t e, const Point& ref) const;

 private:
  std::shared_ptr<const Mesh> mesh_;
  int degree_;
  ReferenceElement ref_;
  std::vector<int> elem_dofs_;
  std::vector<Point> points_;
  std::vector<ElementGeometry> geometry_;
  std::map<int, std::vector<int>> boundary_dofs_;
};

std::shared_ptr<const SpatialSpace> build_space(std::shared_ptr<const Mesh> mesh, int degree);

/// Basis values and physical gradients of element `e` at a reference point.
struct BasisValues {
  std::vector<double> values;
  std::vector<Point> gradients;
};
BasisValues eval_basis(const SpatialSpace& space, std::size_t element, const Point& ref_point);

/// Lagrange basis of P_m on [0,1] over a fixed node set.
class TemporalBasis {
 public:
  explicit TemporalBasis(std::vector<double> nodes);

  /// Nodes at the right Gauss-Radau points (the slab trial basis).
  static TemporalBasis radau(int m);
  /// Nodes at the Gauss-Legendre points (test basis for P_{m-1}).
  static TemporalBasis gauss(int degree);

  int degree() const { return static_cast<int>(nodes_.size()) - 1; }
  int size() const { return static_cast<int>(nodes_.size()); }
  const std::vector<double>& nodes() const { return nodes_; }

  double value(int a, double tau) const;
  double derivative(int a, double tau) const;

 private:
  std::vector<double> nodes_;
};

}  // namespace stpnp
