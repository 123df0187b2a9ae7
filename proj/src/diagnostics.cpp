#include "stpnp/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace stpnp {
namespace {

// Value and gradient of a finite element function at spatial quadrature
// point p of element e.
struct Sample {
  double value;
  Point grad;
};

Sample sample(const SlabAssembler& a, std::span<const double> coeffs, std::size_t e,
              std::size_t p) {
  auto dofs = a.space().element_dofs(e);
  auto N = a.ref_values(p);
  auto G = a.gradients(e, p);
  Sample s{0.0, {0.0, 0.0}};
  for (std::size_t l = 0; l < dofs.size(); ++l) {
    const double c = coeffs[dofs[l]];
    s.value += N[l] * c;
    s.grad[0] += G[l][0] * c;
    s.grad[1] += G[l][1] * c;
  }
  return s;
}

}  // namespace

double entropy_density(double eta) { return std::exp(eta) * (eta - 1.0); }

double energy(const SlabAssembler& a, const TraceState& trace) {
  const auto& spec = a.spec();
  const double kt = spec.thermal_energy();
  const std::size_t nq = a.space_rule().size();
  double total = 0.0;
  for (std::size_t e = 0; e < a.space().mesh().num_elements(); ++e)
    for (std::size_t p = 0; p < nq; ++p) {
      const auto& qp = a.quad_point(e, p);
      double density = 0.0;
      for (int i = 0; i < a.num_species(); ++i)
        density += entropy_density(sample(a, trace.u[i], e, p).value);
      const Point g = sample(a, trace.phi, e, p).grad;
      density += qp.permittivity / (2.0 * kt) * (g[0] * g[0] + g[1] * g[1]);
      total += qp.weight * qp.area * density;
    }
  return total;
}

double dissipation(const SlabAssembler& a, const SlabState& slab) {
  const auto& spec = a.spec();
  const int N = a.num_species();
  const int m = a.temporal_degree();
  const std::size_t nd = a.spatial_dofs();
  const auto& trule = a.time_rule();
  const auto& basis = a.trial_basis();
  const std::size_t nq = a.space_rule().size();

  // Coefficients of each field at every temporal quadrature node.
  std::vector<std::vector<double>> at_nodes((N + 1) * trule.size(), std::vector<double>(nd, 0.0));
  for (std::size_t q = 0; q < trule.size(); ++q)
    for (int f = 0; f <= N; ++f) {
      auto& out = at_nodes[q * (N + 1) + f];
      for (int b = 0; b <= m; ++b) {
        const double l = basis.value(b, trule.points[q][0]);
        const double* src = slab.x.data() + a.species_index(f, b, 0);
        for (std::size_t j = 0; j < nd; ++j) out[j] += l * src[j];
      }
    }

  double total = 0.0;
  for (std::size_t q = 0; q < trule.size(); ++q)
    for (std::size_t e = 0; e < a.space().mesh().num_elements(); ++e)
      for (std::size_t p = 0; p < nq; ++p) {
        const auto& qp = a.quad_point(e, p);
        const Point gphi = sample(a, at_nodes[q * (N + 1) + N], e, p).grad;
        double d = 0.0;
        for (int i = 0; i < N; ++i) {
          const Sample s = sample(a, at_nodes[q * (N + 1) + i], e, p);
          const double k = spec.drift_coefficient(i);
          const double gx = s.grad[0] + k * gphi[0];
          const double gy = s.grad[1] + k * gphi[1];
          d += spec.species[i].diffusivity * std::exp(s.value) * (gx * gx + gy * gy);
        }
        total += trule.weights[q] * qp.weight * qp.area * d;
      }
  return slab.dt * total;
}

std::vector<double> masses(const SlabAssembler& a, const TraceState& trace) {
  std::vector<double> out(a.num_species(), 0.0);
  const std::size_t nq = a.space_rule().size();
  for (std::size_t e = 0; e < a.space().mesh().num_elements(); ++e)
    for (std::size_t p = 0; p < nq; ++p) {
      const auto& qp = a.quad_point(e, p);
      for (int i = 0; i < a.num_species(); ++i)
        out[i] += qp.weight * qp.area * std::exp(sample(a, trace.u[i], e, p).value);
    }
  return out;
}

double min_density(const SlabAssembler& a, const TraceState& trace) {
  double lo = std::numeric_limits<double>::infinity();
  const std::size_t nq = a.space_rule().size();
  for (std::size_t e = 0; e < a.space().mesh().num_elements(); ++e)
    for (std::size_t p = 0; p < nq; ++p)
      for (int i = 0; i < a.num_species(); ++i)
        lo = std::min(lo, std::exp(sample(a, trace.u[i], e, p).value));
  return lo;
}

std::vector<double> l2_error(const SlabAssembler& a, const TraceState& trace,
                             const ExactField& exact, double t) {
  const int N = a.num_species();
  std::vector<double> sq(N + 1, 0.0);
  const std::size_t nq = a.space_rule().size();
  for (std::size_t e = 0; e < a.space().mesh().num_elements(); ++e)
    for (std::size_t p = 0; p < nq; ++p) {
      const auto& qp = a.quad_point(e, p);
      for (int f = 0; f <= N; ++f) {
        const auto& coeffs = f < N ? trace.u[f] : trace.phi;
        const double d = sample(a, coeffs, e, p).value - exact(f < N ? f : -1, t, qp.x);
        sq[f] += qp.weight * d * d;
      }
    }
  for (double& v : sq) v = std::sqrt(v);
  return sq;
}

}  // namespace stpnp
