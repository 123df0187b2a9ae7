#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stpnp {

/// Physical coordinate. The second component is zero on 1D meshes.
using Point = std::array<double, 2>;

struct BoundaryFacet {
  std::array<int, 2> vertices{-1, -1};  // second entry unused in 1D
  int marker = 0;

  bool operator==(const BoundaryFacet&) const = default;
};

/// Conforming simplicial mesh of an interval (dim 1) or a polygon (dim 2).
///
/// Elements are stored with positive orientation; `validate()` checks the
/// full set of topological invariants and is run by every builder.
struct Mesh {
  int dim = 1;
  std::vector<Point> vertices;
  std::vector<std::array<int, 3>> elements;  // first dim+1 entries used
  std::vector<BoundaryFacet> boundary;
  std::vector<int> region;  // one tag per element

  int vertices_per_element() const { return dim + 1; }
  std::size_t num_vertices() const { return vertices.size(); }
  std::size_t num_elements() const { return elements.size(); }

  /// Signed length (1D) or area (2D) of element `e`.
  double signed_measure(std::size_t e) const;
  double measure(std::size_t e) const;
  double total_measure() const;

  /// Throws Error(Topology) naming the first offending element or facet.
  void validate() const;

  bool operator==(const Mesh&) const = default;
};

/// Uniform partition of [a, b] into n cells, with every breakpoint inserted
/// as a vertex. Element regions are the breakpoint interval index (0-based).
/// Boundary markers: 1 at a, 2 at b.
Mesh build_interval_mesh(double a, double b, int n,
                         std::span<const double> breakpoints = {});

/// n x n squares on [0,1]^2, each cut along its (0,0)-(1,1) diagonal.
/// All boundary edges carry marker 1; all elements region 0.
Mesh build_unit_square_mesh(int n);

/// Parses the plain-text mesh format:
///   dim nv ne nb
///   nv lines  x [y]
///   ne lines  region v0 v1 [v2]
///   nb lines  marker v0 [v1]
/// '#' starts a comment; indices are 0-based.
Mesh load_mesh(std::string_view text);
Mesh load_mesh_file(const std::string& path);

/// Inverse of load_mesh; coordinates written with 17 significant digits.
std::string serialize_mesh(const Mesh& mesh);

/// Region index of x for the sorted breakpoint list (x on a breakpoint maps
/// to the interval on its right).
int interval_region(std::span<const double> breakpoints, double x);

}  // namespace stpnp
