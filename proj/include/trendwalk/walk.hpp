#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "trendwalk/numeric.hpp"
#include "trendwalk/series.hpp"

namespace trendwalk {

// Pinned cumulative sum of mean-removed samples ("data walk").
//
//   steps[k]       = y_k - mean_removed             k = 0..n-1
//   positions[0]   = 0
//   positions[j]   = steps[0] + ... + steps[j-1]     j = 1..n
//
// positions[n] is zero in exact arithmetic; the double path keeps it within
// 64 * eps * sum|y_k| by compensated summation.
template <class T>
struct BasicWalk {
  std::vector<T> steps;
  std::vector<T> positions;
  T mean_removed{};

  std::size_t size() const { return steps.size(); }
};

using DataWalk = BasicWalk<double>;
using ExactWalk = BasicWalk<Rational>;

// Keys on sample order only; x values play no part. Throws InvalidSeries when
// fewer than 2 samples are given.
template <class T>
BasicWalk<T> build_walk(std::span<const T> ys);

template <class T>
BasicWalk<T> build_walk(const BasicSeries<T>& series) {
  return build_walk<T>(series.ys());
}

// A = -(z_1 + ... + z_N); z_0 does not contribute.
template <class T>
T signed_area(const BasicWalk<T>& walk);

// Area of the noise-free unit-slope walk on the unit grid: n(n+1)/12, reduced.
// Throws Overflow when n(n+1) does not fit in 64 bits, InvalidSeries for n < 2.
Fraction reference_area(std::int64_t n);

// z_j = (j^2 - j) / (2(n-1)) - j/2 for j = 1..n.
template <class T = double>
std::vector<T> reference_parabola(std::int64_t n);

// Sign changes of a path. A maximal run of exact zeros counts once, and a
// flip across such a run is not counted again.
template <class T>
std::size_t count_sign_changes(std::span<const T> path);

// Interior zeros of a walk: sign changes among positions[1..n-1]. The pinned
// endpoints are excluded.
template <class T>
std::size_t count_interior_zeros(const BasicWalk<T>& walk) {
  const std::span<const T> pos(walk.positions);
  return count_sign_changes<T>(pos.subspan(1, pos.size() - 2));
}

}  // namespace trendwalk
