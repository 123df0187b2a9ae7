#include "stpnp/lu.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

#include "stpnp/error.hpp"
#include "stpnp/simd/kernels.hpp"

namespace stpnp {
namespace {

std::vector<std::vector<int>> symmetric_adjacency(const CsrMatrix& a) {
  const std::size_t n = a.rows();
  std::vector<std::vector<int>> adj(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::int32_t c : a.row_indices(r)) {
      if (static_cast<std::size_t>(c) == r) continue;
      adj[r].push_back(c);
      adj[c].push_back(static_cast<int>(r));
    }
  for (auto& nb : adj) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }
  return adj;
}

// BFS levels from `start` restricted to unvisited nodes; returns the last
// level's minimum-degree node and the eccentricity.
std::pair<int, int> farthest(const std::vector<std::vector<int>>& adj, int start,
                             const std::vector<char>& done) {
  std::vector<int> level(adj.size(), -1);
  std::deque<int> q{start};
  level[start] = 0;
  int last = start;
  while (!q.empty()) {
    const int v = q.front();
    q.pop_front();
    if (level[v] > level[last] ||
        (level[v] == level[last] && adj[v].size() < adj[last].size()))
      last = v;
    for (int w : adj[v])
      if (!done[w] && level[w] < 0) {
        level[w] = level[v] + 1;
        q.push_back(w);
      }
  }
  return {last, level[last]};
}

}  // namespace

std::vector<int> reverse_cuthill_mckee(const CsrMatrix& a) {
  const std::size_t n = a.rows();
  const auto adj = symmetric_adjacency(a);
  std::vector<char> done(n, 0);
  std::vector<int> order;
  order.reserve(n);
  for (;;) {
    int seed = -1;
    for (std::size_t v = 0; v < n; ++v)
      if (!done[v] && (seed < 0 || adj[v].size() < adj[seed].size())) seed = static_cast<int>(v);
    if (seed < 0) break;
    // Pseudo-peripheral start node.
    int start = seed, ecc = -1;
    for (int sweep = 0; sweep < 4; ++sweep) {
      auto [far, e] = farthest(adj, start, done);
      if (e <= ecc) break;
      ecc = e;
      start = far;
    }
    std::deque<int> q{start};
    done[start] = 1;
    while (!q.empty()) {
      const int v = q.front();
      q.pop_front();
      order.push_back(v);
      std::vector<int> next;
      for (int w : adj[v])
        if (!done[w]) {
          done[w] = 1;
          next.push_back(w);
        }
      std::sort(next.begin(), next.end(),
                [&](int x, int y) { return adj[x].size() < adj[y].size(); });
      for (int w : next) q.push_back(w);
    }
  }
  std::reverse(order.begin(), order.end());
  return order;
}

BandLu::BandLu(const CsrMatrix& a, bool reorder) : n_(a.rows()) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::InvalidInput, "LU needs a square matrix");
  const std::size_t n = n_;
  if (reorder) {
    perm_ = reverse_cuthill_mckee(a);
  } else {
    perm_.resize(n);
    for (std::size_t i = 0; i < n; ++i) perm_[i] = static_cast<int>(i);
  }
  std::vector<int> inv(n);
  for (std::size_t i = 0; i < n; ++i) inv[perm_[i]] = static_cast<int>(i);

  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t i = inv[r];
    for (std::int32_t c : a.row_indices(r)) {
      const std::size_t j = inv[c];
      if (i > j) kl_ = std::max(kl_, i - j);
      if (j > i) ku_ = std::max(ku_, j - i);
    }
  }
  width_ = 2 * kl_ + ku_ + 1;
  band_.assign(n * width_, 0.0);
  lower_.assign(n * std::max<std::size_t>(kl_, 1), 0.0);
  pivots_.resize(n);

  // Rows are equilibrated to unit max norm: the Jacobian mixes rows
  // scaled by densities that may differ by hundreds of orders of magnitude.
  row_inv_.assign(n, 1.0);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t i = inv[r];
    auto cols = a.row_indices(r);
    auto vals = a.row_values(r);
    double big = 0.0;
    for (double v : vals) big = std::max(big, std::abs(v));
    if (!(big > 0.0) || !std::isfinite(big))
      throw Error(ErrorKind::SingularMatrix,
                  "singular matrix: zero pivot at row " + std::to_string(r) + " (empty row)");
    row_inv_[i] = 1.0 / big;
    for (std::size_t k = 0; k < cols.size(); ++k)
      slot(i)[col_offset(i, inv[cols[k]])] += vals[k] * row_inv_[i];
  }

  const std::size_t span_len = kl_ + ku_ + 1;  // columns [k, k+kl+ku]
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t last = std::min(n - 1, k + kl_);
    std::size_t p = k;
    double best = std::abs(slot(k)[col_offset(k, k)]);
    for (std::size_t r = k + 1; r <= last; ++r) {
      const double v = std::abs(slot(r)[col_offset(r, k)]);
      if (v > best) {
        best = v;
        p = r;
      }
    }
    if (!(best > 1e-15))
      throw Error(ErrorKind::SingularMatrix,
                  "singular matrix: zero pivot at row " + std::to_string(perm_[k]) +
                      " (elimination step " + std::to_string(k) + ")");
    pivots_[k] = static_cast<int>(p);
    const std::size_t len = std::min(span_len, n - k);
    if (p != k) {
      double* rk = slot(k) + col_offset(k, k);
      double* rp = slot(p) + col_offset(p, k);
      std::swap_ranges(rk, rk + len, rp);
    }
    const double* pivot_row = slot(k) + col_offset(k, k);
    const double pivot = pivot_row[0];
    double* lk = lower_.data() + k * std::max<std::size_t>(kl_, 1);
    for (std::size_t r = k + 1; r <= last; ++r) {
      double* rr = slot(r) + col_offset(r, k);
      if (rr[0] == 0.0) continue;
      const double l = rr[0] / pivot;
      lk[r - k - 1] = l;
      rr[0] = 0.0;
      simd::axpy(-l, pivot_row + 1, rr + 1, len - 1);
    }
  }
}

std::vector<double> BandLu::solve(std::span<const double> b) const {
  if (b.size() != n_) throw Error(ErrorKind::InvalidInput, "right-hand side size mismatch");
  const std::size_t n = n_;
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = b[perm_[i]] * row_inv_[i];
  const std::size_t lstride = std::max<std::size_t>(kl_, 1);
  for (std::size_t k = 0; k < n; ++k) {
    if (pivots_[k] != static_cast<int>(k)) std::swap(y[k], y[pivots_[k]]);
    const double yk = y[k];
    if (yk == 0.0) continue;
    const std::size_t last = std::min(n - 1, k + kl_);
    const double* lk = lower_.data() + k * lstride;
    if (last > k) simd::axpy(-yk, lk, y.data() + k + 1, last - k);
  }
  const std::size_t span_len = kl_ + ku_ + 1;
  for (std::size_t kk = n; kk-- > 0;) {
    const double* row = slot(kk) + col_offset(kk, kk);
    const std::size_t len = std::min(span_len, n - kk);
    const double s = len > 1 ? simd::dot(row + 1, y.data() + kk + 1, len - 1) : 0.0;
    y[kk] = (y[kk] - s) / row[0];
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[perm_[i]] = y[i];
  return x;
}

std::vector<double> lu_solve(const CsrMatrix& a, std::span<const double> b) {
  return BandLu(a).solve(b);
}

}  // namespace stpnp
