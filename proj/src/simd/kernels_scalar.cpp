#include "simd/eft.hpp"
#include "trendwalk/simd/kernels.hpp"

namespace trendwalk::simd {
namespace {

double sum_scalar(std::span<const double> xs) {
  eft::Accumulator acc;
  for (double x : xs) acc.add(x);
  return acc.value();
}

double dot_scalar(std::span<const double> a, std::span<const double> b) {
  eft::Accumulator acc;
  double perr = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double p, e;
    eft::two_prod(a[i], b[i], p, e);
    acc.add(p);
    perr += e;
  }
  return acc.s + (acc.c + perr);
}

void shift_scalar(std::span<const double> in, double c, std::span<double> out) {
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = in[i] - c;
}

void residuals_scalar(std::span<const double> y, std::span<const double> x, double slope,
                      double intercept, std::span<double> out) {
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double fitted = slope * x[i];
    out[i] = (y[i] - fitted) - intercept;
  }
}

void prefix_sum_scalar(std::span<const double> steps, std::span<double> out) {
  eft::Accumulator acc;
  out[0] = 0.0;
  for (std::size_t j = 0; j < steps.size(); ++j) {
    acc.add(steps[j]);
    out[j + 1] = acc.value();
  }
}

}  // namespace

namespace detail {

void prefix_sum_reference(std::span<const double> steps, std::span<double> out) {
  prefix_sum_scalar(steps, out);
}

const KernelTable kScalarTable{
    Isa::Scalar, "scalar", sum_scalar, dot_scalar, shift_scalar, residuals_scalar, prefix_sum_scalar,
};

}  // namespace detail
}  // namespace trendwalk::simd
