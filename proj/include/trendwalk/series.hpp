#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "trendwalk/numeric.hpp"

namespace trendwalk {

// Relative tolerance on gap deviations; file input carries decimal round-off.
inline constexpr double kDefaultEquidistanceTol = 1e-9;

// Ordered (x, y) samples: n >= 2, equal lengths, strictly increasing x.
// Throws InvalidSeries on construction otherwise.
template <class T>
class BasicSeries {
 public:
  BasicSeries(std::vector<T> xs, std::vector<T> ys);

  // x_k = (k - 1) / (n - 1), the unit-interval grid.
  static BasicSeries on_unit_grid(std::vector<T> ys);

  std::span<const T> xs() const { return xs_; }
  std::span<const T> ys() const { return ys_; }
  std::size_t size() const { return ys_.size(); }

  // x_N - x_1
  T x_span() const { return xs_.back() - xs_.front(); }

  // Max deviation of consecutive gaps from the mean gap <= tol * mean gap.
  bool is_equidistant(double tol = kDefaultEquidistanceTol) const;

 private:
  std::vector<T> xs_;
  std::vector<T> ys_;
};

using SampleSeries = BasicSeries<double>;
using ExactSeries = BasicSeries<Rational>;

template <class T>
std::vector<T> unit_grid(std::size_t n);

}  // namespace trendwalk
