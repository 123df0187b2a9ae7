#include "stpnp/simd/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#include "stpnp/error.hpp"

namespace stpnp::simd {
namespace {

bool cpu_has_avx2() {
#if defined(STPNP_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* table_for(Isa isa) {
#if defined(STPNP_HAVE_AVX2_KERNELS)
  if (isa == Isa::Avx2) return &avx2_kernels();
#endif
  (void)isa;
  return &scalar_kernels();
}

Isa initial_isa() {
  if (const char* env = std::getenv("STPNP_SIMD")) {
    if (std::string(env) == "scalar") return Isa::Scalar;
  }
  return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
}

struct State {
  std::atomic<Isa> isa{initial_isa()};
  std::atomic<const KernelTable*> table{table_for(isa.load())};
};

State& state() {
  static State s;
  return s;
}

}  // namespace

std::string_view name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

bool supported(Isa isa) {
  if (isa == Isa::Scalar) return true;
  return cpu_has_avx2();
}

Isa active_isa() { return state().isa.load(); }

void select_isa(Isa isa) {
  if (!supported(isa))
    throw Error(ErrorKind::InvalidInput,
                "instruction set not available: " + std::string(name(isa)));
  state().isa.store(isa);
  state().table.store(table_for(isa));
}

const KernelTable& kernels() { return *state().table.load(std::memory_order_relaxed); }

}  // namespace stpnp::simd
