#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "trendwalk/simd/kernels.hpp"

using trendwalk::simd::Isa;
using trendwalk::simd::KernelTable;
using trendwalk::simd::kernel_table;

namespace {

// Both tables are compensated; each is within eps*|s| + n^2 eps^2 sum|x| of
// the exact value, so they must agree within twice that.
double bound(std::span<const double> xs, double s) {
  const double eps = std::numeric_limits<double>::epsilon();
  double abs_sum = 0.0;
  for (double x : xs) abs_sum += std::abs(x);
  const double n = static_cast<double>(xs.size());
  return 2.0 * eps * std::abs(s) + 4.0 * n * n * eps * eps * abs_sum;
}

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, bool ill_conditioned) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_int_distribution<int> expo(-30, 30);
  std::vector<double> v(n);
  for (auto& x : v) x = ill_conditioned ? std::ldexp(g(rng), expo(rng)) : g(rng);
  if (ill_conditioned && n >= 2) {
    // Large cancelling pair.
    v[0] = 1e20;
    v[n - 1] = -1e20;
  }
  return v;
}

class KernelEquivalence : public ::testing::Test {
 protected:
  void SetUp() override {
    avx2 = kernel_table(Isa::Avx2);
    if (!avx2) GTEST_SKIP() << "AVX2+FMA not available on this CPU";
  }
  const KernelTable& scalar = *kernel_table(Isa::Scalar);
  const KernelTable* avx2 = nullptr;
};

}  // namespace

TEST(Kernels, ScalarTableAlwaysAvailable) {
  ASSERT_NE(kernel_table(Isa::Scalar), nullptr);
  EXPECT_EQ(kernel_table(Isa::Scalar)->name, "scalar");
  EXPECT_FALSE(trendwalk::simd::kernels().name.empty());
}

TEST(Kernels, CompensatedSumRecoversCancellation) {
  const auto& k = *kernel_table(Isa::Scalar);
  const std::vector<double> xs{1e16, 1.0, -1e16, 1.0};
  EXPECT_EQ(k.sum(xs), 2.0);
  const std::vector<double> a{1e8, 1.0, -1e8};
  const std::vector<double> b{1e8 + 1.0, 1.0, 1e8};
  // 1e16 + 1e8 + 1 - 1e16 = 1e8 + 1
  EXPECT_EQ(k.dot(a, b), 1e8 + 1.0);
}

TEST(Kernels, PrefixSumStartsAtZero) {
  const auto& k = *kernel_table(Isa::Scalar);
  const std::vector<double> steps{-0.5, 0.0, 0.5};
  std::vector<double> out(4, 99.0);
  k.prefix_sum(steps, out);
  EXPECT_EQ(out, (std::vector<double>{0.0, -0.5, -0.5, 0.0}));
}

TEST_F(KernelEquivalence, SumAndDotAgreeWithinCompensatedBound) {
  std::mt19937_64 rng(20261017);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(0, 300)(rng);
    const bool ill = trial % 3 == 0;
    const auto a = random_vector(rng, n, ill);
    const auto b = random_vector(rng, n, ill);

    const double s0 = scalar.sum(a);
    const double s1 = avx2->sum(a);
    ASSERT_LE(std::abs(s0 - s1), bound(a, s0)) << "n=" << n << " trial=" << trial;

    std::vector<double> prod(n);
    for (std::size_t i = 0; i < n; ++i) prod[i] = a[i] * b[i];
    const double d0 = scalar.dot(a, b);
    const double d1 = avx2->dot(a, b);
    ASSERT_LE(std::abs(d0 - d1), bound(prod, d0) + 1e-300) << "n=" << n << " trial=" << trial;
  }
}

TEST_F(KernelEquivalence, ElementwiseKernelsAreBitwiseIdentical) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(0, 67)(rng);
    const auto y = random_vector(rng, n, trial % 2 == 0);
    const auto x = random_vector(rng, n, false);
    const double c = std::normal_distribution<double>(0.0, 10.0)(rng);
    const double b = std::normal_distribution<double>(0.0, 10.0)(rng);

    std::vector<double> o0(n), o1(n);
    scalar.shift(y, c, o0);
    avx2->shift(y, c, o1);
    ASSERT_EQ(o0, o1);

    scalar.residuals(y, x, c, b, o0);
    avx2->residuals(y, x, c, b, o1);
    ASSERT_EQ(o0, o1);

    std::vector<double> p0(n + 1), p1(n + 1);
    scalar.prefix_sum(y, p0);
    avx2->prefix_sum(y, p1);
    ASSERT_EQ(p0, p1);
  }
}
