#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace stpnp {

struct Triplet {
  std::int32_t row;
  std::int32_t col;
  double value;
};

/// Compressed sparse row matrix. Column indices are sorted and unique per row.
class CsrMatrix {
 public:
  CsrMatrix() = default;
  /// Takes ownership of raw CSR arrays; throws InvalidInput if malformed.
  CsrMatrix(std::size_t rows, std::size_t cols, std::vector<std::int64_t> offsets,
            std::vector<std::int32_t> indices, std::vector<double> values);

  /// Duplicate entries are summed.
  static CsrMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets);
  static CsrMatrix identity(std::size_t n);
  /// Pattern with zero values; `row_cols[r]` need not be sorted.
  static CsrMatrix from_pattern(std::size_t cols, std::vector<std::vector<std::int32_t>> row_cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return values_.size(); }

  std::span<const std::int64_t> offsets() const { return offsets_; }
  std::span<const std::int32_t> indices() const { return indices_; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  std::span<const std::int32_t> row_indices(std::size_t r) const {
    return {indices_.data() + offsets_[r], static_cast<std::size_t>(offsets_[r + 1] - offsets_[r])};
  }
  std::span<double> row_values(std::size_t r) {
    return {values_.data() + offsets_[r], static_cast<std::size_t>(offsets_[r + 1] - offsets_[r])};
  }
  std::span<const double> row_values(std::size_t r) const {
    return {values_.data() + offsets_[r], static_cast<std::size_t>(offsets_[r + 1] - offsets_[r])};
  }

  /// Position of (r, c) in values(), or -1 if structurally zero.
  std::int64_t find(std::size_t r, std::size_t c) const;
  double at(std::size_t r, std::size_t c) const;

  /// y = A x.
  void multiply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> multiply(std::span<const double> x) const;

  double norm_inf() const;
  /// Row-major dense copy; intended for tests and small systems.
  std::vector<double> to_dense() const;
  void fill(double value);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> offsets_{0};
  std::vector<std::int32_t> indices_;
  std::vector<double> values_;
};

}  // namespace stpnp
