#include "trendwalk/numeric.hpp"

#include "trendwalk/simd/kernels.hpp"

namespace trendwalk {

double sum(std::span<const double> xs) { return simd::kernels().sum(xs); }

Rational sum(std::span<const Rational> xs) {
  Rational s = 0;
  for (const auto& x : xs) s += x;
  return s;
}

double dot(std::span<const double> a, std::span<const double> b) {
  return simd::kernels().dot(a, b);
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace trendwalk
