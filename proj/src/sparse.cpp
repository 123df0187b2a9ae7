#include "stpnp/sparse.hpp"

#include <algorithm>
#include <cmath>

#include "stpnp/error.hpp"
#include "stpnp/simd/kernels.hpp"

namespace stpnp {

CsrMatrix::CsrMatrix(std::size_t rows, std::size_t cols, std::vector<std::int64_t> offsets,
                     std::vector<std::int32_t> indices, std::vector<double> values)
    : rows_(rows),
      cols_(cols),
      offsets_(std::move(offsets)),
      indices_(std::move(indices)),
      values_(std::move(values)) {
  auto fail = [](const char* msg) { throw Error(ErrorKind::InvalidInput, msg); };
  if (offsets_.size() != rows_ + 1 || offsets_.front() != 0) fail("CSR offsets have the wrong shape");
  if (static_cast<std::size_t>(offsets_.back()) != indices_.size() || indices_.size() != values_.size())
    fail("CSR arrays have inconsistent lengths");
  for (std::size_t r = 0; r < rows_; ++r) {
    if (offsets_[r + 1] < offsets_[r]) fail("CSR offsets are not monotone");
    for (std::int64_t k = offsets_[r]; k < offsets_[r + 1]; ++k) {
      if (indices_[k] < 0 || static_cast<std::size_t>(indices_[k]) >= cols_)
        fail("CSR column index out of range");
      if (k > offsets_[r] && indices_[k] <= indices_[k - 1])
        fail("CSR column indices must be sorted and unique");
    }
  }
}

CsrMatrix CsrMatrix::from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> t) {
  std::sort(t.begin(), t.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<std::int64_t> offsets(rows + 1, 0);
  std::vector<std::int32_t> indices;
  std::vector<double> values;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (t[k].row < 0 || static_cast<std::size_t>(t[k].row) >= rows || t[k].col < 0 ||
        static_cast<std::size_t>(t[k].col) >= cols)
      throw Error(ErrorKind::InvalidInput, "triplet index out of range");
    if (k > 0 && t[k].row == t[k - 1].row && t[k].col == t[k - 1].col) {
      values.back() += t[k].value;
      continue;
    }
    indices.push_back(t[k].col);
    values.push_back(t[k].value);
    offsets[t[k].row + 1]++;
  }
  for (std::size_t r = 0; r < rows; ++r) offsets[r + 1] += offsets[r];
  return CsrMatrix(rows, cols, std::move(offsets), std::move(indices), std::move(values));
}

CsrMatrix CsrMatrix::identity(std::size_t n) {
  std::vector<std::int64_t> offsets(n + 1);
  std::vector<std::int32_t> indices(n);
  for (std::size_t i = 0; i <= n; ++i) offsets[i] = static_cast<std::int64_t>(i);
  for (std::size_t i = 0; i < n; ++i) indices[i] = static_cast<std::int32_t>(i);
  return CsrMatrix(n, n, std::move(offsets), std::move(indices), std::vector<double>(n, 1.0));
}

CsrMatrix CsrMatrix::from_pattern(std::size_t cols, std::vector<std::vector<std::int32_t>> row_cols) {
  const std::size_t rows = row_cols.size();
  std::vector<std::int64_t> offsets(rows + 1, 0);
  std::vector<std::int32_t> indices;
  for (std::size_t r = 0; r < rows; ++r) {
    auto& rc = row_cols[r];
    std::sort(rc.begin(), rc.end());
    rc.erase(std::unique(rc.begin(), rc.end()), rc.end());
    indices.insert(indices.end(), rc.begin(), rc.end());
    offsets[r + 1] = static_cast<std::int64_t>(indices.size());
    std::vector<std::int32_t>().swap(rc);
  }
  std::vector<double> values(indices.size(), 0.0);
  return CsrMatrix(rows, cols, std::move(offsets), std::move(indices), std::move(values));
}

std::int64_t CsrMatrix::find(std::size_t r, std::size_t c) const {
  const auto begin = indices_.begin() + offsets_[r];
  const auto end = indices_.begin() + offsets_[r + 1];
  auto it = std::lower_bound(begin, end, static_cast<std::int32_t>(c));
  if (it == end || *it != static_cast<std::int32_t>(c)) return -1;
  return it - indices_.begin();
}

double CsrMatrix::at(std::size_t r, std::size_t c) const {
  const std::int64_t k = find(r, c);
  return k < 0 ? 0.0 : values_[k];
}

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != cols_ || y.size() != rows_)
    throw Error(ErrorKind::InvalidInput, "matrix-vector size mismatch");
  simd::kernels().csr_matvec(rows_, offsets_.data(), indices_.data(), values_.data(), x.data(),
                             y.data());
}

std::vector<double> CsrMatrix::multiply(std::span<const double> x) const {
  std::vector<double> y(rows_);
  multiply(x, y);
  return y;
}

double CsrMatrix::norm_inf() const {
  double m = 0.0;
  for (std::size_t r = 0; r < rows_; ++r) {
    double s = 0.0;
    for (double v : row_values(r)) s += std::abs(v);
    m = std::max(m, s);
  }
  return m;
}

std::vector<double> CsrMatrix::to_dense() const {
  std::vector<double> d(rows_ * cols_, 0.0);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::int64_t k = offsets_[r]; k < offsets_[r + 1]; ++k) d[r * cols_ + indices_[k]] = values_[k];
  return d;
}

void CsrMatrix::fill(double value) { std::fill(values_.begin(), values_.end(), value); }

}  // namespace stpnp
