#pragma once

// Data-parallel inner loops used by the sparse and banded linear algebra.
//
// Every kernel has a scalar reference implementation. Wider variants are
// compiled into separate translation units and picked once at runtime from
// the CPU feature bits; STPNP_SIMD=scalar in the environment forces the
// reference path.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace stpnp::simd {

enum class Isa { Scalar, Avx2 };

std::string_view name(Isa isa);

/// Instruction set the dispatched kernels currently use.
Isa active_isa();

/// True if the running CPU and this build both support `isa`.
bool supported(Isa isa);

/// Switches the dispatched kernels. Throws if `isa` is not supported.
void select_isa(Isa isa);

struct KernelTable {
  double (*dot)(const double* a, const double* b, std::size_t n);
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  double (*max_abs)(const double* x, std::size_t n);
  double (*sum_squares)(const double* x, std::size_t n);
  // y[r] = sum_k values[k] * x[cols[k]] for k in [offsets[r], offsets[r+1]).
  void (*csr_matvec)(std::size_t rows, const std::int64_t* offsets,
                     const std::int32_t* cols, const double* values,
                     const double* x, double* y);
};

const KernelTable& scalar_kernels();
#if defined(STPNP_HAVE_AVX2_KERNELS)
const KernelTable& avx2_kernels();
#endif

/// The table for the active instruction set.
const KernelTable& kernels();

inline double dot(const double* a, const double* b, std::size_t n) {
  return kernels().dot(a, b, n);
}
inline void axpy(double alpha, const double* x, double* y, std::size_t n) {
  kernels().axpy(alpha, x, y, n);
}
inline double max_abs(const double* x, std::size_t n) {
  return kernels().max_abs(x, n);
}
inline double sum_squares(const double* x, std::size_t n) {
  return kernels().sum_squares(x, n);
}

}  // namespace stpnp::simd
