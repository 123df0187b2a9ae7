#include "stpnp/fespace.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "stpnp/error.hpp"

namespace stpnp {

// ---------------------------------------------------------------------------
// ReferenceElement

ReferenceElement::ReferenceElement(int dim, int degree) : dim_(dim), degree_(degree) {
  if (degree < 1) throw Error(ErrorKind::UnsupportedDegree, "spatial degree must be >= 1");
  if (dim != 1 && dim != 2) throw Error(ErrorKind::InvalidInput, "dimension must be 1 or 2");
  const int k = degree;
  if (dim == 1) {
    nodes_.push_back({k, 0, 0});
    nodes_.push_back({0, k, 0});
    for (int i = 1; i < k; ++i) nodes_.push_back({k - i, i, 0});
    return;
  }
  nodes_.push_back({k, 0, 0});
  nodes_.push_back({0, k, 0});
  nodes_.push_back({0, 0, k});
  const int edges[3][2] = {{0, 1}, {1, 2}, {2, 0}};
  for (const auto& ed : edges) {
    for (int s = 1; s < k; ++s) {
      std::array<int, 3> alpha{0, 0, 0};
      alpha[ed[0]] = k - s;
      alpha[ed[1]] = s;
      nodes_.push_back(alpha);
    }
  }
  for (int j = 1; j < k; ++j)
    for (int i = 1; i + j < k; ++i) nodes_.push_back({k - i - j, i, j});
}

Point ReferenceElement::node_point(int a) const {
  const auto& al = nodes_[a];
  return {static_cast<double>(al[1]) / degree_, dim_ == 2 ? static_cast<double>(al[2]) / degree_ : 0.0};
}

void ReferenceElement::evaluate(const Point& ref, std::span<double> values,
                                std::span<Point> ref_gradients) const {
  const int nb = dim_ + 1;
  const double lam[3] = {1.0 - ref[0] - (dim_ == 2 ? ref[1] : 0.0), ref[0],
                         dim_ == 2 ? ref[1] : 0.0};
  const double k = degree_;
  for (int a = 0; a < num_nodes(); ++a) {
    const auto& alpha = nodes_[a];
    double f[3], df[3];
    for (int v = 0; v < nb; ++v) {
      // f_v = prod_{s<alpha_v} (k*lam - s)/(s+1) and its derivative in lam.
      double val = 1.0, der = 0.0;
      for (int s = 0; s < alpha[v]; ++s) {
        const double factor = (k * lam[v] - s) / (s + 1);
        der = der * factor + val * k / (s + 1);
        val *= factor;
      }
      f[v] = val;
      df[v] = der;
    }
    double prod = 1.0;
    for (int v = 0; v < nb; ++v) prod *= f[v];
    values[a] = prod;
    double dlam[3] = {0.0, 0.0, 0.0};
    for (int v = 0; v < nb; ++v) {
      double p = df[v];
      for (int w = 0; w < nb; ++w)
        if (w != v) p *= f[w];
      dlam[v] = p;
    }
    if (dim_ == 1) {
      ref_gradients[a] = {dlam[1] - dlam[0], 0.0};
    } else {
      ref_gradients[a] = {dlam[1] - dlam[0], dlam[2] - dlam[0]};
    }
  }
}

// ---------------------------------------------------------------------------
// ElementGeometry

Point ElementGeometry::map(const Point& ref) const {
  return {origin[0] + jacobian[0][0] * ref[0] + jacobian[0][1] * ref[1],
          origin[1] + jacobian[1][0] * ref[0] + jacobian[1][1] * ref[1]};
}

Point ElementGeometry::physical_gradient(const Point& g) const {
  return {g[0] * inv_jacobian[0][0] + g[1] * inv_jacobian[1][0],
          g[0] * inv_jacobian[0][1] + g[1] * inv_jacobian[1][1]};
}

namespace {

ElementGeometry make_geometry(const Mesh& mesh, std::size_t e) {
  ElementGeometry g;
  const auto& el = mesh.elements[e];
  const Point& p0 = mesh.vertices[el[0]];
  g.origin = p0;
  if (mesh.dim == 1) {
    const double len = mesh.vertices[el[1]][0] - p0[0];
    g.jacobian = {{{len, 0.0}, {0.0, 1.0}}};
    g.det = len;
    g.inv_jacobian = {{{len != 0.0 ? 1.0 / len : 0.0, 0.0}, {0.0, 1.0}}};
    return g;
  }
  const Point& p1 = mesh.vertices[el[1]];
  const Point& p2 = mesh.vertices[el[2]];
  const double a = p1[0] - p0[0], b = p2[0] - p0[0];
  const double c = p1[1] - p0[1], d = p2[1] - p0[1];
  g.jacobian = {{{a, b}, {c, d}}};
  g.det = a * d - b * c;
  if (g.det != 0.0) {
    const double inv = 1.0 / g.det;
    g.inv_jacobian = {{{d * inv, -b * inv}, {-c * inv, a * inv}}};
  }
  return g;
}

}  // namespace

// ---------------------------------------------------------------------------
// SpatialSpace

SpatialSpace::SpatialSpace(std::shared_ptr<const Mesh> mesh, int degree)
    : mesh_(std::move(mesh)), degree_(degree), ref_(mesh_->dim, degree) {
  const Mesh& m = *mesh_;
  const int k = degree;
  const int nloc = ref_.num_nodes();
  const std::size_t ne = m.num_elements();
  const int nv = static_cast<int>(m.num_vertices());

  std::map<std::array<int, 2>, int> edge_id;
  if (m.dim == 2) {
    for (const auto& el : m.elements)
      for (int a = 0; a < 3; ++a) {
        const int v0 = el[a], v1 = el[(a + 1) % 3];
        edge_id.emplace(std::array<int, 2>{std::min(v0, v1), std::max(v0, v1)},
                        static_cast<int>(edge_id.size()));
      }
  }
  // The map assigns ids in insertion order only for new keys; renumber by key
  // order so numbering does not depend on traversal details.
  {
    int next = 0;
    for (auto& [key, id] : edge_id) id = next++;
  }
  const int n_edges = static_cast<int>(edge_id.size());
  const int per_edge = k - 1;
  const int per_cell = m.dim == 1 ? k - 1 : (k - 1) * (k - 2) / 2;
  const std::size_t ndofs = static_cast<std::size_t>(nv) + static_cast<std::size_t>(n_edges) * per_edge +
                            ne * static_cast<std::size_t>(per_cell);

  elem_dofs_.assign(ne * nloc, -1);
  points_.assign(ndofs, Point{0.0, 0.0});
  geometry_.reserve(ne);

  for (std::size_t e = 0; e < ne; ++e) {
    geometry_.push_back(make_geometry(m, e));
    const auto& el = m.elements[e];
    int* dofs = elem_dofs_.data() + e * nloc;
    int a = 0;
    for (int v = 0; v <= m.dim; ++v) dofs[a++] = el[v];
    if (m.dim == 1) {
      for (int s = 1; s < k; ++s) dofs[a++] = nv + static_cast<int>(e) * per_cell + (s - 1);
    } else {
      const int edges[3][2] = {{0, 1}, {1, 2}, {2, 0}};
      for (const auto& ed : edges) {
        const int ga = el[ed[0]], gb = el[ed[1]];
        const int id = edge_id.at({std::min(ga, gb), std::max(ga, gb)});
        for (int s = 1; s < k; ++s) {
          const int pos = ga < gb ? s - 1 : k - 1 - s;
          dofs[a++] = nv + id * per_edge + pos;
        }
      }
      for (int c = 0; c < per_cell; ++c)
        dofs[a++] = nv + n_edges * per_edge + static_cast<int>(e) * per_cell + c;
    }
    for (int l = 0; l < nloc; ++l) points_[dofs[l]] = geometry_.back().map(ref_.node_point(l));
  }

  for (const auto& bf : m.boundary) {
    auto& set = boundary_dofs_[bf.marker];
    set.push_back(bf.vertices[0]);
    if (m.dim == 2) {
      set.push_back(bf.vertices[1]);
      const int ga = bf.vertices[0], gb = bf.vertices[1];
      const int id = edge_id.at({std::min(ga, gb), std::max(ga, gb)});
      for (int s = 0; s < per_edge; ++s) set.push_back(nv + id * per_edge + s);
    }
  }
  for (auto& [marker, dofs] : boundary_dofs_) {
    std::sort(dofs.begin(), dofs.end());
    dofs.erase(std::unique(dofs.begin(), dofs.end()), dofs.end());
  }
}

const std::vector<int>& SpatialSpace::boundary_dofs(int marker) const {
  static const std::vector<int> empty;
  auto it = boundary_dofs_.find(marker);
  return it == boundary_dofs_.end() ? empty : it->second;
}

std::vector<int> SpatialSpace::boundary_markers() const {
  std::vector<int> out;
  for (const auto& [marker, dofs] : boundary_dofs_) out.push_back(marker);
  return out;
}

std::vector<double> SpatialSpace::interpolate(const std::function<double(const Point&)>& f) const {
  std::vector<double> out(points_.size());
  for (std::size_t d = 0; d < points_.size(); ++d) out[d] = f(points_[d]);
  return out;
}

double SpatialSpace::evaluate(std::span<const double> coeffs, std::size_t e, const Point& ref) const {
  const int nloc = dofs_per_element();
  std::vector<double> vals(nloc);
  std::vector<Point> grads(nloc);
  ref_.evaluate(ref, vals, grads);
  double s = 0.0;
  auto dofs = element_dofs(e);
  for (int l = 0; l < nloc; ++l) s += vals[l] * coeffs[dofs[l]];
  return s;
}

std::shared_ptr<const SpatialSpace> build_space(std::shared_ptr<const Mesh> mesh, int degree) {
  if (degree < 1) throw Error(ErrorKind::UnsupportedDegree, "spatial degree must be >= 1");
  return std::make_shared<const SpatialSpace>(std::move(mesh), degree);
}

BasisValues eval_basis(const SpatialSpace& space, std::size_t element, const Point& ref_point) {
  const ElementGeometry& g = space.geometry(element);
  if (g.det == 0.0)
    throw Error(ErrorKind::SingularElement,
                "element " + std::to_string(element) + " has zero Jacobian determinant");
  const int nloc = space.dofs_per_element();
  BasisValues out{std::vector<double>(nloc), std::vector<Point>(nloc)};
  space.reference().evaluate(ref_point, out.values, out.gradients);
  for (auto& grad : out.gradients) grad = g.physical_gradient(grad);
  return out;
}

// ---------------------------------------------------------------------------
// TemporalBasis

TemporalBasis::TemporalBasis(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw Error(ErrorKind::InvalidInput, "temporal basis needs a node");
}

TemporalBasis TemporalBasis::radau(int m) { return TemporalBasis(radau_right_nodes(m)); }

TemporalBasis TemporalBasis::gauss(int degree) {
  const QuadratureRule rule = gauss_legendre(degree + 1);
  std::vector<double> nodes;
  for (const auto& p : rule.points) nodes.push_back(p[0]);
  return TemporalBasis(std::move(nodes));
}

double TemporalBasis::value(int a, double tau) const {
  double v = 1.0;
  for (int b = 0; b < size(); ++b)
    if (b != a) v *= (tau - nodes_[b]) / (nodes_[a] - nodes_[b]);
  return v;
}

double TemporalBasis::derivative(int a, double tau) const {
  double d = 0.0;
  for (int c = 0; c < size(); ++c) {
    if (c == a) continue;
    double p = 1.0 / (nodes_[a] - nodes_[c]);
    for (int b = 0; b < size(); ++b)
      if (b != a && b != c) p *= (tau - nodes_[b]) / (nodes_[a] - nodes_[b]);
    d += p;
  }
  return d;
}

}  // namespace stpnp
