#pragma once

#include <span>
#include <vector>

#include "stpnp/sparse.hpp"

namespace stpnp {

/// Reverse Cuthill-McKee ordering of the symmetrized pattern of `a`.
/// Returns `perm` with perm[new] = old.
std::vector<int> reverse_cuthill_mckee(const CsrMatrix& a);

/// Banded LU factorization with partial pivoting after a bandwidth-reducing
/// symmetric permutation.
///
/// Row elimination and the triangular solves run on the dispatched SIMD
/// kernels (axpy / dot over contiguous band segments).
class BandLu {
 public:
  explicit BandLu(const CsrMatrix& a, bool reorder = true);

  std::vector<double> solve(std::span<const double> b) const;

  std::size_t size() const { return n_; }
  std::size_t lower_bandwidth() const { return kl_; }
  std::size_t upper_bandwidth() const { return ku_; }

 private:
  double* slot(std::size_t s) { return band_.data() + s * width_; }
  const double* slot(std::size_t s) const { return band_.data() + s * width_; }
  // Offset of column c inside slot s.
  std::size_t col_offset(std::size_t s, std::size_t c) const { return c + kl_ - s; }

  std::size_t n_ = 0;
  std::size_t kl_ = 0;
  std::size_t ku_ = 0;
  std::size_t width_ = 0;
  std::vector<int> perm_;    // perm_[new] = old
  std::vector<double> band_;
  std::vector<double> lower_;  // multipliers, kl_ per column
  std::vector<int> pivots_;
  std::vector<double> row_inv_;  // row equilibration factors, new ordering
};

/// Solves A x = b. Throws Error(SingularMatrix) naming the row at which a
/// numerically zero pivot was met.
std::vector<double> lu_solve(const CsrMatrix& a, std::span<const double> b);

}  // namespace stpnp
