#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "stpnp/lu.hpp"
#include "stpnp/simd/kernels.hpp"
#include "stpnp/sparse.hpp"

using namespace stpnp;

namespace {

std::vector<double> random_vector(std::size_t n, std::mt19937& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

// Restores the dispatched instruction set after each test.
class SimdTest : public ::testing::Test {
 protected:
  void SetUp() override { saved_ = simd::active_isa(); }
  void TearDown() override { simd::select_isa(saved_); }
  simd::Isa saved_ = simd::Isa::Scalar;
};

}  // namespace

TEST_F(SimdTest, ScalarAlwaysSupported) {
  EXPECT_TRUE(simd::supported(simd::Isa::Scalar));
  simd::select_isa(simd::Isa::Scalar);
  EXPECT_EQ(simd::active_isa(), simd::Isa::Scalar);
  EXPECT_EQ(simd::name(simd::Isa::Scalar), "scalar");
}

TEST_F(SimdTest, ScalarKernelsAgainstPlainLoops) {
  std::mt19937 rng(1);
  const auto& k = simd::scalar_kernels();
  for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 16u, 33u}) {
    auto a = random_vector(n, rng), b = random_vector(n, rng);
    double dot = 0.0, ss = 0.0, mx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      dot += a[i] * b[i];
      ss += a[i] * a[i];
      mx = std::max(mx, std::abs(a[i]));
    }
    EXPECT_NEAR(k.dot(a.data(), b.data(), n), dot, 1e-14);
    EXPECT_NEAR(k.sum_squares(a.data(), n), ss, 1e-14);
    EXPECT_EQ(k.max_abs(a.data(), n), mx);
    auto y = b;
    k.axpy(0.7, a.data(), y.data(), n);
    for (std::size_t i = 0; i < n; ++i) EXPECT_DOUBLE_EQ(y[i], b[i] + 0.7 * a[i]);
  }
}

#if defined(STPNP_HAVE_AVX2_KERNELS)

TEST_F(SimdTest, Avx2MatchesScalar) {
  if (!simd::supported(simd::Isa::Avx2)) GTEST_SKIP() << "CPU lacks AVX2";
  std::mt19937 rng(2);
  const auto& s = simd::scalar_kernels();
  const auto& v = simd::avx2_kernels();
  for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 8u, 15u, 64u, 1001u}) {
    auto a = random_vector(n, rng), b = random_vector(n, rng);
    const double scale = 1.0 + static_cast<double>(n);
    EXPECT_NEAR(v.dot(a.data(), b.data(), n), s.dot(a.data(), b.data(), n), 1e-14 * scale);
    EXPECT_NEAR(v.sum_squares(a.data(), n), s.sum_squares(a.data(), n), 1e-14 * scale);
    EXPECT_EQ(v.max_abs(a.data(), n), s.max_abs(a.data(), n));
    auto ys = b, yv = b;
    s.axpy(-1.3, a.data(), ys.data(), n);
    v.axpy(-1.3, a.data(), yv.data(), n);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(yv[i], ys[i], 1e-15);
  }
}

TEST_F(SimdTest, Avx2MatvecMatchesScalar) {
  if (!simd::supported(simd::Isa::Avx2)) GTEST_SKIP() << "CPU lacks AVX2";
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> col(0, 49), len(0, 13);
  std::vector<Triplet> t;
  for (int r = 0; r < 60; ++r)
    for (int k = len(rng); k > 0; --k) t.push_back({r, col(rng), random_vector(1, rng)[0]});
  const CsrMatrix a = CsrMatrix::from_triplets(60, 50, t);
  const auto x = random_vector(50, rng);
  std::vector<double> ys(60), yv(60);
  simd::scalar_kernels().csr_matvec(60, a.offsets().data(), a.indices().data(), a.values().data(),
                                    x.data(), ys.data());
  simd::avx2_kernels().csr_matvec(60, a.offsets().data(), a.indices().data(), a.values().data(),
                                  x.data(), yv.data());
  for (int r = 0; r < 60; ++r) EXPECT_NEAR(yv[r], ys[r], 1e-13);
}

TEST_F(SimdTest, LuSolveIdenticalAcrossIsas) {
  if (!simd::supported(simd::Isa::Avx2)) GTEST_SKIP() << "CPU lacks AVX2";
  std::mt19937 rng(4);
  const int n = 120;
  std::vector<Triplet> t;
  for (int i = 0; i < n; ++i) {
    t.push_back({i, i, 4.0 + random_vector(1, rng)[0]});
    for (int d : {1, 2, 7})
      if (i + d < n) {
        t.push_back({i, i + d, random_vector(1, rng)[0]});
        t.push_back({i + d, i, random_vector(1, rng)[0]});
      }
  }
  const CsrMatrix a = CsrMatrix::from_triplets(n, n, t);
  const auto b = random_vector(n, rng);
  simd::select_isa(simd::Isa::Scalar);
  const auto xs = lu_solve(a, b);
  simd::select_isa(simd::Isa::Avx2);
  EXPECT_EQ(simd::active_isa(), simd::Isa::Avx2);
  const auto xv = lu_solve(a, b);
  for (int i = 0; i < n; ++i) EXPECT_NEAR(xv[i], xs[i], 1e-12 * (1.0 + std::abs(xs[i])));
}

#endif
