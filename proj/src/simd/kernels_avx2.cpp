// Compiled with -mavx2 -mfma; only reached after a CPUID check in dispatch.cpp.

#include <immintrin.h>

#include "simd/eft.hpp"
#include "trendwalk/simd/kernels.hpp"

namespace trendwalk::simd {
namespace detail {
void prefix_sum_reference(std::span<const double> steps, std::span<double> out);
}

namespace {

struct Lanes {
  __m256d s = _mm256_setzero_pd();
  __m256d c = _mm256_setzero_pd();

  void add(__m256d x) {
    const __m256d t = _mm256_add_pd(s, x);
    const __m256d bp = _mm256_sub_pd(t, s);
    const __m256d e = _mm256_add_pd(_mm256_sub_pd(s, _mm256_sub_pd(t, bp)), _mm256_sub_pd(x, bp));
    s = t;
    c = _mm256_add_pd(c, e);
  }

  // Folds the four lanes into a scalar accumulator.
  void drain(eft::Accumulator& acc, double& err) const {
    alignas(32) double sv[4];
    alignas(32) double cv[4];
    _mm256_store_pd(sv, s);
    _mm256_store_pd(cv, c);
    for (int i = 0; i < 4; ++i) {
      acc.add(sv[i]);
      err += cv[i];
    }
  }
};

double sum_avx2(std::span<const double> xs) {
  const std::size_t n = xs.size();
  const double* p = xs.data();
  Lanes l0, l1;
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    l0.add(_mm256_loadu_pd(p + i));
    l1.add(_mm256_loadu_pd(p + i + 4));
  }
  eft::Accumulator acc;
  double err = 0.0;
  l0.drain(acc, err);
  l1.drain(acc, err);
  for (; i < n; ++i) acc.add(p[i]);
  return acc.s + (acc.c + err);
}

double dot_avx2(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  const double* pa = a.data();
  const double* pb = b.data();
  Lanes l0, l1;
  __m256d perr0 = _mm256_setzero_pd();
  __m256d perr1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d a0 = _mm256_loadu_pd(pa + i);
    const __m256d b0 = _mm256_loadu_pd(pb + i);
    const __m256d a1 = _mm256_loadu_pd(pa + i + 4);
    const __m256d b1 = _mm256_loadu_pd(pb + i + 4);
    const __m256d p0 = _mm256_mul_pd(a0, b0);
    const __m256d p1 = _mm256_mul_pd(a1, b1);
    perr0 = _mm256_add_pd(perr0, _mm256_fmsub_pd(a0, b0, p0));
    perr1 = _mm256_add_pd(perr1, _mm256_fmsub_pd(a1, b1, p1));
    l0.add(p0);
    l1.add(p1);
  }
  eft::Accumulator acc;
  double err = 0.0;
  l0.drain(acc, err);
  l1.drain(acc, err);
  alignas(32) double ev[4];
  _mm256_store_pd(ev, _mm256_add_pd(perr0, perr1));
  err += (ev[0] + ev[1]) + (ev[2] + ev[3]);
  for (; i < n; ++i) {
    double p, e;
    eft::two_prod(pa[i], pb[i], p, e);
    acc.add(p);
    err += e;
  }
  return acc.s + (acc.c + err);
}

void shift_avx2(std::span<const double> in, double c, std::span<double> out) {
  const std::size_t n = in.size();
  const __m256d cv = _mm256_set1_pd(c);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out.data() + i, _mm256_sub_pd(_mm256_loadu_pd(in.data() + i), cv));
  }
  for (; i < n; ++i) out[i] = in[i] - c;
}

void residuals_avx2(std::span<const double> y, std::span<const double> x, double slope,
                    double intercept, std::span<double> out) {
  const std::size_t n = y.size();
  const __m256d sv = _mm256_set1_pd(slope);
  const __m256d bv = _mm256_set1_pd(intercept);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d fitted = _mm256_mul_pd(sv, _mm256_loadu_pd(x.data() + i));
    const __m256d r = _mm256_sub_pd(_mm256_sub_pd(_mm256_loadu_pd(y.data() + i), fitted), bv);
    _mm256_storeu_pd(out.data() + i, r);
  }
  for (; i < n; ++i) {
    const double fitted = slope * x[i];
    out[i] = (y[i] - fitted) - intercept;
  }
}

}  // namespace

namespace detail {

// The running sum carries a loop dependency; the scalar version is reused.
const KernelTable kAvx2Table{
    Isa::Avx2, "avx2", sum_avx2, dot_avx2, shift_avx2, residuals_avx2, prefix_sum_reference,
};

}  // namespace detail
}  // namespace trendwalk::simd
