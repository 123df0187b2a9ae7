#include "stpnp/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "stpnp/error.hpp"
#include "stpnp/lu.hpp"

namespace stpnp {
namespace {

inline double guarded_exp(double a) {
  if (!(a <= kMaxExponent))
    throw Error(ErrorKind::DivergedState,
                "diverged state: exponent " + std::to_string(a) + " exceeds guard");
  return std::exp(a);
}

inline double dot2(const Point& a, const Point& b) { return a[0] * b[0] + a[1] * b[1]; }

}  // namespace

SlabAssembler::SlabAssembler(ProblemSpec spec, std::shared_ptr<const SpatialSpace> space, int m,
                             QuadratureOrders orders)
    : spec_(std::move(spec)),
      space_(std::move(space)),
      m_(m),
      nd_(space_->num_dofs()),
      nloc_(static_cast<std::size_t>(space_->dofs_per_element())),
      trial_(TemporalBasis::radau(m < 0 ? 0 : m)),
      time_rule_(temporal_quadrature(orders.temporal_points > 0 ? orders.temporal_points : m + 3)),
      space_rule_(spatial_quadrature(space_->mesh().dim, orders.spatial_order > 0
                                                             ? orders.spatial_order
                                                             : 2 * space_->degree() + 2)) {
  if (m < 0) throw Error(ErrorKind::InvalidInput, "temporal degree must be >= 0");
  spec_.validate();
  if (m_ >= 1) test_ = TemporalBasis::gauss(m_ - 1);
  n_unknowns_ = static_cast<std::size_t>(num_species() + 1) * (m_ + 1) * nd_ +
                (spec_.gauge == Gauge::ZeroMean ? m_ + 1 : 0);

  const Mesh& mesh = space_->mesh();
  const std::size_t ne = mesh.num_elements();
  const std::size_t nq = space_rule_.size();
  ref_values_.resize(nq * nloc_);
  std::vector<Point> ref_grads(nq * nloc_);
  for (std::size_t p = 0; p < nq; ++p)
    space_->reference().evaluate(space_rule_.points[p],
                                 std::span<double>(ref_values_.data() + p * nloc_, nloc_),
                                 std::span<Point>(ref_grads.data() + p * nloc_, nloc_));

  grads_.resize(ne * nq * nloc_);
  qp_.resize(ne * nq);
  dof_integrals_.assign(nd_, 0.0);
  for (std::size_t e = 0; e < ne; ++e) {
    const ElementGeometry& g = space_->geometry(e);
    if (g.det == 0.0)
      throw Error(ErrorKind::SingularElement, "element " + std::to_string(e) + " is degenerate");
    auto dofs = space_->element_dofs(e);
    for (std::size_t p = 0; p < nq; ++p) {
      QuadPoint& q = qp_[e * nq + p];
      q.x = g.map(space_rule_.points[p]);
      q.weight = space_rule_.weights[p] * std::abs(g.det);
      const int region = mesh.region[e];
      q.area = spec_.cross_section(region, q.x);
      q.permittivity = spec_.permittivity(region, q.x);
      q.fixed_charge = spec_.fixed_charge(region, q.x);
      if (!(q.area > 0.0))
        throw Error(ErrorKind::InvalidInput, "cross-section must be positive (element " +
                                                 std::to_string(e) + ")");
      if (!(q.permittivity > 0.0))
        throw Error(ErrorKind::InvalidInput, "permittivity must be positive (element " +
                                                 std::to_string(e) + ")");
      for (std::size_t l = 0; l < nloc_; ++l) {
        grads_[(e * nq + p) * nloc_ + l] = g.physical_gradient(ref_grads[p * nloc_ + l]);
        dof_integrals_[dofs[l]] += q.weight * ref_values_[p * nloc_ + l];
      }
    }
  }

  // Dirichlet constraints; later conditions override earlier ones on shared dofs.
  std::map<std::size_t, Constraint> by_index;
  for (const auto& bc : spec_.dirichlet) {
    const int field = bc.field.is_potential() ? num_species() : bc.field.index;
    for (int dof : space_->boundary_dofs(bc.marker))
      for (int a = 0; a <= m_; ++a) {
        const std::size_t idx = species_index(field, a, dof);
        by_index[idx] = Constraint{idx, bc.field.is_potential() ? -1 : bc.field.index, a,
                                   static_cast<std::size_t>(dof), &bc.value};
      }
  }
  for (const auto& [idx, c] : by_index) {
    constraints_.push_back(c);
    constrained_.push_back(idx);
  }
  build_pattern();
}

void SlabAssembler::build_pattern() {
  const int N = num_species();
  const int M1 = m_ + 1;
  std::vector<std::vector<std::int32_t>> rows(n_unknowns_);
  const Mesh& mesh = space_->mesh();
  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    auto dofs = space_->element_dofs(e);
    for (int fr = 0; fr <= N; ++fr)
      for (int b = 0; b < M1; ++b)
        for (int dr : dofs) {
          auto& row = rows[species_index(fr, b, dr)];
          for (int fc = 0; fc <= N; ++fc) {
            if (fr < N && fc < N && fc != fr) continue;
            for (int a = 0; a < M1; ++a)
              for (int dc : dofs) row.push_back(static_cast<std::int32_t>(species_index(fc, a, dc)));
          }
        }
  }
  if (spec_.gauge == Gauge::ZeroMean) {
    for (int a = 0; a < M1; ++a) {
      const auto mi = static_cast<std::int32_t>(multiplier_index(a));
      for (std::size_t j = 0; j < nd_; ++j) {
        rows[potential_index(a, j)].push_back(mi);
        rows[mi].push_back(static_cast<std::int32_t>(potential_index(a, j)));
      }
    }
  }
  for (std::size_t r = 0; r < n_unknowns_; ++r) rows[r].push_back(static_cast<std::int32_t>(r));
  pattern_ = CsrMatrix::from_pattern(n_unknowns_, std::move(rows));
}

double SlabAssembler::prescribed(const Constraint& c, double t0, double dt) const {
  const double t = t0 + trial_.nodes()[c.mode] * dt;
  const Point& x = space_->dof_point(c.dof);
  const double v = (*c.value)(t, x);
  if (c.field < 0) return v;
  if (!(v > 0.0) || !std::isfinite(v))
    throw Error(ErrorKind::InvalidBoundaryData,
                "Dirichlet density must be positive, got " + std::to_string(v));
  return std::log(v);
}

SlabState SlabAssembler::initial_guess(const TraceState& incoming, double t0, double dt) const {
  SlabState s;
  s.t0 = t0;
  s.dt = dt;
  s.incoming = incoming;
  s.x.assign(n_unknowns_, 0.0);
  for (int i = 0; i < num_species(); ++i)
    for (int a = 0; a <= m_; ++a)
      std::copy(incoming.u[i].begin(), incoming.u[i].end(), s.x.begin() + species_index(i, a, 0));
  for (int a = 0; a <= m_; ++a)
    std::copy(incoming.phi.begin(), incoming.phi.end(), s.x.begin() + potential_index(a, 0));
  impose_dirichlet_values(s);
  return s;
}

void SlabAssembler::impose_dirichlet_values(SlabState& slab) const {
  for (const auto& c : constraints_) slab.x[c.index] = prescribed(c, slab.t0, slab.dt);
}

TraceState SlabAssembler::right_trace(const SlabState& slab) const {
  TraceState t;
  t.time = slab.t0 + slab.dt;
  t.u.resize(num_species());
  for (int i = 0; i < num_species(); ++i) {
    auto begin = slab.x.begin() + species_index(i, m_, 0);
    t.u[i].assign(begin, begin + nd_);
  }
  auto begin = slab.x.begin() + potential_index(m_, 0);
  t.phi.assign(begin, begin + nd_);
  return t;
}

std::vector<double> SlabAssembler::residual(const SlabState& slab, bool constrained) const {
  std::vector<double> r;
  assemble(slab, &r, nullptr, constrained);
  return r;
}

CsrMatrix SlabAssembler::jacobian(const SlabState& slab, bool constrained) const {
  CsrMatrix j;
  assemble(slab, nullptr, &j, constrained);
  return j;
}

void SlabAssembler::assemble(const SlabState& slab, std::vector<double>* residual,
                             CsrMatrix* jacobian, bool constrained) const {
  if (slab.x.size() != n_unknowns_)
    throw Error(ErrorKind::InvalidInput, "slab state has the wrong number of unknowns");
  for (double v : slab.x)
    if (!std::isfinite(v)) throw Error(ErrorKind::DivergedState, "diverged state: non-finite unknown");

  const int N = num_species();
  const int M1 = m_ + 1;
  const int NF = N + 1;
  const std::size_t nl = nloc_;
  const std::size_t nloc_total = static_cast<std::size_t>(NF) * M1 * nl;
  const std::size_t nq = space_rule_.size();
  const std::size_t nt = time_rule_.size();
  const double dt = slab.dt;
  const double t0 = slab.t0;
  const double t1 = t0 + dt;
  const double charge = spec_.unit_charge;

  if (residual) residual->assign(n_unknowns_, 0.0);
  if (jacobian) {
    *jacobian = pattern_;
    jacobian->fill(0.0);
  }

  // Temporal tables at the quadrature nodes.
  std::vector<double> L(nt * M1), dL(nt * M1), Lt(nt * std::max(m_, 1), 0.0), L0(M1);
  for (std::size_t q = 0; q < nt; ++q) {
    const double tau = time_rule_.points[q][0];
    for (int a = 0; a < M1; ++a) {
      L[q * M1 + a] = trial_.value(a, tau);
      dL[q * M1 + a] = trial_.derivative(a, tau);
    }
    for (int b = 0; b < m_; ++b) Lt[q * m_ + b] = test_->value(b, tau);
  }
  for (int a = 0; a < M1; ++a) L0[a] = trial_.value(a, 0.0);

  std::vector<double> drift(N);
  for (int i = 0; i < N; ++i) drift[i] = spec_.drift_coefficient(i);

  auto loc = [&](int f, int a, std::size_t l) { return (static_cast<std::size_t>(f) * M1 + a) * nl + l; };

  std::vector<double> Rloc(nloc_total);
  std::vector<double> Kloc(jacobian ? nloc_total * nloc_total : 0);
  std::vector<double> X(nloc_total);
  std::vector<double> prev(static_cast<std::size_t>(N) * nl);
  std::vector<double> val(static_cast<std::size_t>(NF) * M1);
  std::vector<Point> grad(static_cast<std::size_t>(NF) * M1);
  std::vector<std::size_t> gidx(nloc_total);
  std::vector<double> uq(N), cq(N), fq(N);
  std::vector<Point> guq(N);

  const Mesh& mesh = space_->mesh();
  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    auto dofs = space_->element_dofs(e);
    for (int f = 0; f < NF; ++f)
      for (int a = 0; a < M1; ++a)
        for (std::size_t l = 0; l < nl; ++l) {
          const std::size_t g = species_index(f, a, dofs[l]);
          gidx[loc(f, a, l)] = g;
          X[loc(f, a, l)] = slab.x[g];
        }
    for (int i = 0; i < N; ++i)
      for (std::size_t l = 0; l < nl; ++l) prev[i * nl + l] = slab.incoming.u[i][dofs[l]];
    std::fill(Rloc.begin(), Rloc.end(), 0.0);
    if (jacobian) std::fill(Kloc.begin(), Kloc.end(), 0.0);
    auto K = [&](std::size_t r, std::size_t c) -> double& { return Kloc[r * nloc_total + c]; };

    for (std::size_t p = 0; p < nq; ++p) {
      const QuadPoint& qp = quad_point(e, p);
      const auto Nv = ref_values(p);
      const auto G = gradients(e, p);
      const double wA = qp.weight * qp.area;
      const double eps = qp.permittivity;

      for (int f = 0; f < NF; ++f)
        for (int a = 0; a < M1; ++a) {
          double v = 0.0;
          Point gr{0.0, 0.0};
          for (std::size_t l = 0; l < nl; ++l) {
            const double c = X[loc(f, a, l)];
            v += Nv[l] * c;
            gr[0] += G[l][0] * c;
            gr[1] += G[l][1] * c;
          }
          val[f * M1 + a] = v;
          grad[f * M1 + a] = gr;
        }

      // Right-endpoint terms: species jump/derivative boundary part and the
      // endpoint Poisson equation.
      double src_minus = qp.fixed_charge;
      if (spec_.potential_forcing) src_minus += spec_.potential_forcing(t1, qp.x);
      for (int i = 0; i < N; ++i) {
        const double c_minus = guarded_exp(val[i * M1 + m_]);
        double u_prev = 0.0;
        for (std::size_t l = 0; l < nl; ++l) u_prev += Nv[l] * prev[i * nl + l];
        const double c_prev = guarded_exp(u_prev);
        const double zq = spec_.species[i].valence * charge;
        src_minus += zq * c_minus;
        for (std::size_t l = 0; l < nl; ++l) {
          Rloc[loc(i, m_, l)] += wA * c_minus * Nv[l];
          for (int b = 0; b < M1; ++b) Rloc[loc(i, b, l)] -= wA * L0[b] * c_prev * Nv[l];
        }
        if (jacobian) {
          for (std::size_t l = 0; l < nl; ++l)
            for (std::size_t lc = 0; lc < nl; ++lc) {
              const double nn = wA * Nv[l] * Nv[lc];
              K(loc(i, m_, l), loc(i, m_, lc)) += c_minus * nn;
              K(loc(N, m_, l), loc(i, m_, lc)) -= zq * c_minus * nn;
            }
        }
      }
      const Point& gphi_minus = grad[N * M1 + m_];
      for (std::size_t l = 0; l < nl; ++l)
        Rloc[loc(N, m_, l)] += wA * (eps * dot2(gphi_minus, G[l]) - src_minus * Nv[l]);
      if (jacobian) {
        for (std::size_t l = 0; l < nl; ++l)
          for (std::size_t lc = 0; lc < nl; ++lc)
            K(loc(N, m_, l), loc(N, m_, lc)) += wA * eps * dot2(G[lc], G[l]);
      }

      // Slab interior terms.
      for (std::size_t q = 0; q < nt; ++q) {
        const double tau = time_rule_.points[q][0];
        const double wt = time_rule_.weights[q];
        const double t = t0 + tau * dt;
        const double* Lq = &L[q * M1];
        const double* dLq = &dL[q * M1];
        const double wAt = wA * wt;

        Point gphi{0.0, 0.0};
        for (int a = 0; a < M1; ++a) {
          gphi[0] += Lq[a] * grad[N * M1 + a][0];
          gphi[1] += Lq[a] * grad[N * M1 + a][1];
        }
        double src = qp.fixed_charge;
        if (m_ >= 1 && spec_.potential_forcing) src += spec_.potential_forcing(t, qp.x);

        for (int i = 0; i < N; ++i) {
          double u = 0.0;
          Point gu{0.0, 0.0};
          for (int a = 0; a < M1; ++a) {
            u += Lq[a] * val[i * M1 + a];
            gu[0] += Lq[a] * grad[i * M1 + a][0];
            gu[1] += Lq[a] * grad[i * M1 + a][1];
          }
          const double c = guarded_exp(u);
          uq[i] = u;
          cq[i] = c;
          guq[i] = gu;
          src += spec_.species[i].valence * charge * c;
          const double D = spec_.species[i].diffusivity;
          const double kap = drift[i];
          const Point gmu{gu[0] + kap * gphi[0], gu[1] + kap * gphi[1]};
          const double f = spec_.species[i].forcing ? spec_.species[i].forcing(t, qp.x) : 0.0;

          for (int b = 0; b < M1; ++b)
            for (std::size_t l = 0; l < nl; ++l)
              Rloc[loc(i, b, l)] += wAt * (-c * dLq[b] * Nv[l] + dt * Lq[b] * D * c * dot2(gmu, G[l]) -
                                           dt * f * Lq[b] * Nv[l]);

          if (jacobian) {
            for (int b = 0; b < M1; ++b)
              for (int a = 0; a < M1; ++a) {
                const double mass_coef = -wAt * c * dLq[b] * Lq[a];
                const double diff_coef = wAt * dt * Lq[b] * Lq[a] * D * c;
                for (std::size_t l = 0; l < nl; ++l) {
                  const double gmuG = dot2(gmu, G[l]);
                  for (std::size_t lc = 0; lc < nl; ++lc) {
                    const double GG = dot2(G[lc], G[l]);
                    K(loc(i, b, l), loc(i, a, lc)) +=
                        mass_coef * Nv[l] * Nv[lc] + diff_coef * (Nv[lc] * gmuG + GG);
                    K(loc(i, b, l), loc(N, a, lc)) += diff_coef * kap * GG;
                  }
                }
              }
          }
        }

        // Poisson equation tested against P_{m-1} in time.
        for (int b = 0; b < m_; ++b) {
          const double lt = Lt[q * m_ + b];
          const double coef = wAt * dt * lt;
          for (std::size_t l = 0; l < nl; ++l)
            Rloc[loc(N, b, l)] += coef * (eps * dot2(gphi, G[l]) - src * Nv[l]);
          if (jacobian) {
            for (int a = 0; a < M1; ++a) {
              const double ca = coef * Lq[a];
              for (std::size_t l = 0; l < nl; ++l)
                for (std::size_t lc = 0; lc < nl; ++lc) {
                  K(loc(N, b, l), loc(N, a, lc)) += ca * eps * dot2(G[lc], G[l]);
                  const double nn = ca * Nv[l] * Nv[lc];
                  for (int i = 0; i < N; ++i)
                    K(loc(N, b, l), loc(i, a, lc)) -= nn * spec_.species[i].valence * charge * cq[i];
                }
            }
          }
        }
      }
    }

    if (residual)
      for (std::size_t r = 0; r < nloc_total; ++r) (*residual)[gidx[r]] += Rloc[r];
    if (jacobian) {
      auto vals = jacobian->values();
      for (std::size_t r = 0; r < nloc_total; ++r) {
        const std::size_t row = gidx[r];
        for (std::size_t c = 0; c < nloc_total; ++c) {
          const double v = Kloc[r * nloc_total + c];
          if (v == 0.0) continue;
          const std::int64_t k = jacobian->find(row, gidx[c]);
          vals[k] += v;
        }
      }
    }
  }

  if (spec_.gauge == Gauge::ZeroMean) {
    for (int a = 0; a < M1; ++a) {
      const std::size_t mi = multiplier_index(a);
      const double lambda = slab.x[mi];
      double mean = 0.0;
      for (std::size_t j = 0; j < nd_; ++j) {
        const std::size_t pj = potential_index(a, j);
        mean += dof_integrals_[j] * slab.x[pj];
        if (residual) (*residual)[pj] += lambda * dof_integrals_[j];
        if (jacobian) {
          jacobian->values()[jacobian->find(pj, mi)] += dof_integrals_[j];
          jacobian->values()[jacobian->find(mi, pj)] += dof_integrals_[j];
        }
      }
      if (residual) (*residual)[mi] = mean;
    }
  }

  if (constrained) {
    for (const auto& c : constraints_) {
      if (residual) (*residual)[c.index] = slab.x[c.index] - prescribed(c, t0, dt);
      if (jacobian) {
        auto row = jacobian->row_values(c.index);
        std::fill(row.begin(), row.end(), 0.0);
        jacobian->values()[jacobian->find(c.index, c.index)] = 1.0;
      }
    }
  }
}

void SlabAssembler::apply_dirichlet(CsrMatrix& jacobian, std::vector<double>& rhs) const {
  if (constrained_.empty()) return;
  std::vector<char> is_constrained(n_unknowns_, 0);
  for (std::size_t idx : constrained_) is_constrained[idx] = 1;
  for (std::size_t idx : constrained_) {
    auto row = jacobian.row_values(idx);
    auto cols = jacobian.row_indices(idx);
    // Identity row: the constrained correction equals its right-hand side.
    double diag = 0.0;
    for (std::size_t k = 0; k < cols.size(); ++k)
      if (static_cast<std::size_t>(cols[k]) == idx) diag = row[k];
    if (diag == 0.0) throw Error(ErrorKind::SingularMatrix, "Dirichlet row without diagonal");
    rhs[idx] /= diag;
    std::fill(row.begin(), row.end(), 0.0);
    row[jacobian.find(idx, idx) - jacobian.offsets()[idx]] = 1.0;
  }
  for (std::size_t r = 0; r < n_unknowns_; ++r) {
    if (is_constrained[r]) continue;
    auto cols = jacobian.row_indices(r);
    auto vals = jacobian.row_values(r);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (!is_constrained[cols[k]] || vals[k] == 0.0) continue;
      rhs[r] -= vals[k] * rhs[cols[k]];
      vals[k] = 0.0;
    }
  }
}

std::vector<double> SlabAssembler::boundary_outflow(const SlabState& slab) const {
  const std::vector<double> raw = residual(slab, false);
  std::vector<double> out(num_species(), 0.0);
  for (const auto& c : constraints_)
    if (c.field >= 0) out[c.field] += raw[c.index];
  // A row sum over all species rows of a converged slab vanishes except on
  // constrained rows, so this equals mass_prev - mass_new + sources.
  for (double& v : out) v = -v;
  return out;
}

std::vector<double> SlabAssembler::solve_trace_potential(const std::vector<std::vector<double>>& u,
                                                         double t) const {
  const int N = num_species();
  const bool gauge = spec_.gauge == Gauge::ZeroMean;
  const std::size_t n = nd_ + (gauge ? 1 : 0);
  std::vector<Triplet> trip;
  std::vector<double> rhs(n, 0.0);
  const std::size_t nq = space_rule_.size();
  const Mesh& mesh = space_->mesh();
  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    auto dofs = space_->element_dofs(e);
    for (std::size_t p = 0; p < nq; ++p) {
      const QuadPoint& qp = quad_point(e, p);
      const auto Nv = ref_values(p);
      const auto G = gradients(e, p);
      double src = qp.fixed_charge;
      if (spec_.potential_forcing) src += spec_.potential_forcing(t, qp.x);
      for (int i = 0; i < N; ++i) {
        double ui = 0.0;
        for (std::size_t l = 0; l < nloc_; ++l) ui += Nv[l] * u[i][dofs[l]];
        src += spec_.species[i].valence * spec_.unit_charge * guarded_exp(ui);
      }
      const double wA = qp.weight * qp.area;
      for (std::size_t l = 0; l < nloc_; ++l) {
        rhs[dofs[l]] += wA * src * Nv[l];
        for (std::size_t lc = 0; lc < nloc_; ++lc)
          trip.push_back({dofs[l], dofs[lc], wA * qp.permittivity * dot2(G[lc], G[l])});
      }
    }
  }
  if (gauge) {
    const auto mi = static_cast<std::int32_t>(nd_);
    for (std::size_t j = 0; j < nd_; ++j) {
      trip.push_back({static_cast<std::int32_t>(j), mi, dof_integrals_[j]});
      trip.push_back({mi, static_cast<std::int32_t>(j), dof_integrals_[j]});
    }
    trip.push_back({mi, mi, 0.0});
  }
  CsrMatrix K = CsrMatrix::from_triplets(n, n, std::move(trip));

  // Potential Dirichlet data at time t, eliminated symmetrically.
  std::vector<double> fixed(n, 0.0);
  std::vector<char> is_fixed(n, 0);
  for (const auto& c : constraints_) {
    if (c.field >= 0 || c.mode != m_) continue;
    fixed[c.dof] = (*c.value)(t, space_->dof_point(c.dof));
    is_fixed[c.dof] = 1;
  }
  for (std::size_t r = 0; r < n; ++r) {
    auto cols = K.row_indices(r);
    auto vals = K.row_values(r);
    if (is_fixed[r]) {
      for (std::size_t k = 0; k < cols.size(); ++k) vals[k] = static_cast<std::size_t>(cols[k]) == r ? 1.0 : 0.0;
      rhs[r] = fixed[r];
      continue;
    }
    for (std::size_t k = 0; k < cols.size(); ++k)
      if (is_fixed[cols[k]]) {
        rhs[r] -= vals[k] * fixed[cols[k]];
        vals[k] = 0.0;
      }
  }
  std::vector<double> sol = lu_solve(K, rhs);
  sol.resize(nd_);
  return sol;
}

TraceState SlabAssembler::initial_state(double t0) const {
  TraceState s;
  s.time = t0;
  s.u.resize(num_species());
  for (int i = 0; i < num_species(); ++i) {
    const auto& c0 = spec_.species[i].initial_density;
    s.u[i].resize(nd_);
    for (std::size_t j = 0; j < nd_; ++j) {
      const double c = c0(space_->dof_point(j));
      if (!(c > 0.0) || !std::isfinite(c))
        throw Error(ErrorKind::PositivityViolation,
                    "initial density of species " + std::to_string(i) + " is not positive at dof " +
                        std::to_string(j));
      s.u[i][j] = std::log(c);
    }
  }
  s.phi = solve_trace_potential(s.u, t0);
  return s;
}

}  // namespace stpnp
