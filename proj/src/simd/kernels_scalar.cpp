#include "stpnp/simd/kernels.hpp"

#include <cmath>

namespace stpnp::simd {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double max_abs_scalar(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::fmax(m, std::fabs(x[i]));
  return m;
}

double sum_squares_scalar(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
  return s;
}

void csr_matvec_scalar(std::size_t rows, const std::int64_t* offsets,
                       const std::int32_t* cols, const double* values,
                       const double* x, double* y) {
  for (std::size_t r = 0; r < rows; ++r) {
    double s = 0.0;
    for (std::int64_t k = offsets[r]; k < offsets[r + 1]; ++k)
      s += values[k] * x[cols[k]];
    y[r] = s;
  }
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{dot_scalar, axpy_scalar, max_abs_scalar,
                                 sum_squares_scalar, csr_matvec_scalar};
  return table;
}

}  // namespace stpnp::simd
