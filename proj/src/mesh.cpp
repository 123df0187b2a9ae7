#include "stpnp/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "stpnp/error.hpp"

namespace stpnp {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::Parse: return "parse-error";
    case ErrorKind::Topology: return "topology-error";
    case ErrorKind::UnsupportedDegree: return "unsupported-degree";
    case ErrorKind::SingularElement: return "singular-element";
    case ErrorKind::PositivityViolation: return "positivity-violation";
    case ErrorKind::InvalidBoundaryData: return "invalid-boundary-data";
    case ErrorKind::DivergedState: return "diverged-state";
    case ErrorKind::SingularMatrix: return "singular-matrix";
    case ErrorKind::NewtonFailure: return "newton-failure";
    case ErrorKind::StepFailure: return "step-failure";
    case ErrorKind::UnknownPreset: return "unknown-preset";
    case ErrorKind::Config: return "config-error";
    case ErrorKind::Io: return "io-error";
  }
  return "error";
}

double Mesh::signed_measure(std::size_t e) const {
  const auto& el = elements[e];
  if (dim == 1) return vertices[el[1]][0] - vertices[el[0]][0];
  const Point& p0 = vertices[el[0]];
  const Point& p1 = vertices[el[1]];
  const Point& p2 = vertices[el[2]];
  return 0.5 * ((p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]));
}

double Mesh::measure(std::size_t e) const { return std::abs(signed_measure(e)); }

double Mesh::total_measure() const {
  double s = 0.0;
  for (std::size_t e = 0; e < elements.size(); ++e) s += measure(e);
  return s;
}

void Mesh::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorKind::Topology, msg); };
  if (dim != 1 && dim != 2) fail("mesh dimension must be 1 or 2");
  if (region.size() != elements.size())
    fail("region tag count does not match element count");
  const int nv = static_cast<int>(vertices.size());
  const int nloc = vertices_per_element();
  std::vector<char> used(vertices.size(), 0);

  for (std::size_t e = 0; e < elements.size(); ++e) {
    for (int a = 0; a < nloc; ++a) {
      const int v = elements[e][a];
      if (v < 0 || v >= nv)
        fail("element " + std::to_string(e) + " references vertex " + std::to_string(v) +
             " of " + std::to_string(nv));
      used[v] = 1;
    }
    if (!(signed_measure(e) > 0.0))
      fail("element " + std::to_string(e) + " is inverted or degenerate");
  }
  for (int v = 0; v < nv; ++v)
    if (!used[v]) fail("vertex " + std::to_string(v) + " is not referenced by any element");

  // Faces: key is the sorted vertex tuple of a facet.
  std::map<std::array<int, 2>, int> face_count;
  for (const auto& el : elements) {
    if (dim == 1) {
      face_count[{el[0], -1}]++;
      face_count[{el[1], -1}]++;
    } else {
      for (int a = 0; a < 3; ++a) {
        int v0 = el[a], v1 = el[(a + 1) % 3];
        face_count[{std::min(v0, v1), std::max(v0, v1)}]++;
      }
    }
  }
  std::map<std::array<int, 2>, int> facet_seen;
  for (std::size_t f = 0; f < boundary.size(); ++f) {
    const auto& bf = boundary[f];
    std::array<int, 2> key{};
    if (dim == 1) {
      key = {bf.vertices[0], -1};
    } else {
      key = {std::min(bf.vertices[0], bf.vertices[1]), std::max(bf.vertices[0], bf.vertices[1])};
    }
    for (int a = 0; a < dim; ++a)
      if (key[a] < 0 || key[a] >= nv)
        fail("boundary facet " + std::to_string(f) + " references an invalid vertex");
    auto it = face_count.find(key);
    if (it == face_count.end() || it->second != 1)
      fail("boundary facet " + std::to_string(f) + " is not a face of exactly one element");
    if (facet_seen[key]++ > 0) fail("boundary facet " + std::to_string(f) + " is duplicated");
  }
  for (const auto& [key, count] : face_count) {
    if (count > 2) fail("a face is shared by more than two elements");
    if (count == 1 && !facet_seen.count(key))
      fail("boundary face (" + std::to_string(key[0]) + (dim == 2 ? "," + std::to_string(key[1]) : "") +
           ") has no boundary facet entry");
  }
}

int interval_region(std::span<const double> breakpoints, double x) {
  auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), x);
  return static_cast<int>(it - breakpoints.begin());
}

Mesh build_interval_mesh(double a, double b, int n, std::span<const double> breakpoints) {
  if (!(a < b)) throw Error(ErrorKind::InvalidInput, "interval mesh requires a < b");
  if (n < 1) throw Error(ErrorKind::InvalidInput, "interval mesh requires n >= 1");
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i] > a && breakpoints[i] < b))
      throw Error(ErrorKind::InvalidInput, "breakpoint outside (a, b)");
    if (i > 0 && !(breakpoints[i] > breakpoints[i - 1]))
      throw Error(ErrorKind::InvalidInput, "breakpoints must be strictly increasing");
  }
  const double h = (b - a) / n;
  std::vector<double> xs;
  xs.reserve(n + 1 + breakpoints.size());
  for (int i = 0; i <= n; ++i) xs.push_back(i == n ? b : a + i * h);
  for (double bp : breakpoints) {
    auto it = std::lower_bound(xs.begin(), xs.end(), bp);
    const double snap = 1e-9 * h;
    if (it != xs.end() && std::abs(*it - bp) <= snap) {
      *it = bp;
    } else if (it != xs.begin() && std::abs(*(it - 1) - bp) <= snap) {
      *(it - 1) = bp;
    } else {
      xs.insert(it, bp);
    }
  }

  Mesh mesh;
  mesh.dim = 1;
  for (double x : xs) mesh.vertices.push_back({x, 0.0});
  const int ne = static_cast<int>(xs.size()) - 1;
  for (int e = 0; e < ne; ++e) {
    mesh.elements.push_back({e, e + 1, -1});
    mesh.region.push_back(interval_region(breakpoints, 0.5 * (xs[e] + xs[e + 1])));
  }
  mesh.boundary.push_back({{0, -1}, 1});
  mesh.boundary.push_back({{ne, -1}, 2});
  mesh.validate();
  return mesh;
}

Mesh build_unit_square_mesh(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "unit square mesh requires n >= 1");
  Mesh mesh;
  mesh.dim = 2;
  const double h = 1.0 / n;
  auto vid = [n](int i, int j) { return j * (n + 1) + i; };
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      mesh.vertices.push_back({i == n ? 1.0 : i * h, j == n ? 1.0 : j * h});
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int v00 = vid(i, j), v10 = vid(i + 1, j), v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
      mesh.elements.push_back({v00, v10, v11});
      mesh.elements.push_back({v00, v11, v01});
      mesh.region.push_back(0);
      mesh.region.push_back(0);
    }
  }
  for (int i = 0; i < n; ++i) {
    mesh.boundary.push_back({{vid(i, 0), vid(i + 1, 0)}, 1});
    mesh.boundary.push_back({{vid(n, i), vid(n, i + 1)}, 1});
    mesh.boundary.push_back({{vid(i + 1, n), vid(i, n)}, 1});
    mesh.boundary.push_back({{vid(0, i + 1), vid(0, i)}, 1});
  }
  mesh.validate();
  return mesh;
}

}  // namespace stpnp
