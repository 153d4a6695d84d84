#include "trendwalk/walk.hpp"

#include <limits>
#include <numeric>

#include "trendwalk/error.hpp"
#include "trendwalk/simd/kernels.hpp"

namespace trendwalk {

template <class T>
BasicWalk<T> build_walk(std::span<const T> ys) {
  const std::size_t n = ys.size();
  if (n < 2) throw InvalidSeries("a data walk needs at least 2 samples");

  BasicWalk<T> walk;
  walk.steps.resize(n);
  walk.positions.resize(n + 1);
  if constexpr (std::is_same_v<T, double>) {
    const auto& k = simd::kernels();
    walk.mean_removed = k.sum(ys) / static_cast<double>(n);
    k.shift(ys, walk.mean_removed, walk.steps);
    k.prefix_sum(walk.steps, walk.positions);
  } else {
    walk.mean_removed = sum(ys) / T(static_cast<long long>(n));
    walk.positions[0] = 0;
    for (std::size_t k = 0; k < n; ++k) {
      walk.steps[k] = ys[k] - walk.mean_removed;
      walk.positions[k + 1] = walk.positions[k] + walk.steps[k];
    }
  }
  return walk;
}

template <class T>
T signed_area(const BasicWalk<T>& walk) {
  const std::span<const T> pos(walk.positions);
  return -sum(pos.subspan(1));
}

Fraction reference_area(std::int64_t n) {
  if (n < 2) throw InvalidSeries("reference area needs n >= 2");
  std::int64_t prod = 0;
  if (__builtin_mul_overflow(n, n + 1, &prod)) {
    throw Overflow("n(n+1) overflows 64-bit integers for n = " + std::to_string(n));
  }
  const std::int64_t g = std::gcd(prod, std::int64_t{12});
  return Fraction{prod / g, 12 / g};
}

template <class T>
std::vector<T> reference_parabola(std::int64_t n) {
  if (n < 2) throw InvalidSeries("reference parabola needs n >= 2");
  std::vector<T> z(static_cast<std::size_t>(n));
  const T denom = T(2 * (n - 1));
  for (std::int64_t j = 1; j <= n; ++j) {
    z[static_cast<std::size_t>(j - 1)] = T(j * j - j) / denom - T(j) / T(2);
  }
  return z;
}

template <class T>
std::size_t count_sign_changes(std::span<const T> path) {
  std::size_t count = 0;
  int last_sign = 0;
  bool in_zero_run = false;
  for (const T& v : path) {
    if (v == 0) {
      if (!in_zero_run) ++count;
      in_zero_run = true;
      continue;
    }
    const int s = v > 0 ? 1 : -1;
    if (last_sign != 0 && s != last_sign && !in_zero_run) ++count;
    last_sign = s;
    in_zero_run = false;
  }
  return count;
}

template BasicWalk<double> build_walk<double>(std::span<const double>);
template BasicWalk<Rational> build_walk<Rational>(std::span<const Rational>);
template double signed_area<double>(const BasicWalk<double>&);
template Rational signed_area<Rational>(const BasicWalk<Rational>&);
template std::vector<double> reference_parabola<double>(std::int64_t);
template std::vector<Rational> reference_parabola<Rational>(std::int64_t);
template std::size_t count_sign_changes<double>(std::span<const double>);
template std::size_t count_sign_changes<Rational>(std::span<const Rational>);

}  // namespace trendwalk
