#pragma once

// Double-precision inner loops used by the walk and estimator code.
//
// Every kernel has a portable scalar reference. Wider variants (AVX2+FMA on
// x86-64) are compiled into separate translation units and picked once at
// startup from the CPU feature bits. The environment variable TRENDWALK_SIMD
// (values: auto, scalar, avx2) pins the choice.
//
// Reductions are compensated (TwoSum / TwoProduct error-free transforms), so
// the scalar and vector tables agree to a few ulps of the result even though
// they associate differently. Element-wise kernels agree bit for bit.

#include <cstddef>
#include <span>
#include <string_view>

namespace trendwalk::simd {

enum class Isa { Scalar, Avx2 };

struct KernelTable {
  Isa isa;
  std::string_view name;

  // Compensated sum of xs.
  double (*sum)(std::span<const double> xs);
  // Compensated dot product; a and b have equal length.
  double (*dot)(std::span<const double> a, std::span<const double> b);
  // out[i] = in[i] - c
  void (*shift)(std::span<const double> in, double c, std::span<double> out);
  // out[i] = (y[i] - slope * x[i]) - intercept
  void (*residuals)(std::span<const double> y, std::span<const double> x, double slope,
                    double intercept, std::span<double> out);
  // out[0] = 0, out[j] = compensated sum of steps[0..j-1]; out.size() == steps.size() + 1
  void (*prefix_sum)(std::span<const double> steps, std::span<double> out);
};

// Table selected for this process.
const KernelTable& kernels();

// Table for a specific ISA, or nullptr when the CPU (or build) lacks it.
const KernelTable* kernel_table(Isa isa);

namespace detail {
extern const KernelTable kScalarTable;
#if defined(TRENDWALK_HAVE_AVX2)
extern const KernelTable kAvx2Table;
#endif
}  // namespace detail

}  // namespace trendwalk::simd
