#include "trendwalk/series.hpp"

#include <cmath>
#include <string>

#include "trendwalk/error.hpp"

namespace trendwalk {

template <class T>
BasicSeries<T>::BasicSeries(std::vector<T> xs, std::vector<T> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  if (xs_.size() != ys_.size()) {
    throw InvalidSeries("xs and ys differ in length (" + std::to_string(xs_.size()) + " vs " +
                        std::to_string(ys_.size()) + ")");
  }
  if (ys_.size() < 2) throw InvalidSeries("a series needs at least 2 samples");
  if constexpr (std::is_same_v<T, double>) {
    for (std::size_t k = 0; k < ys_.size(); ++k) {
      if (!std::isfinite(xs_[k]) || !std::isfinite(ys_[k])) {
        throw InvalidSeries("non-finite sample at index " + std::to_string(k));
      }
    }
  }
  for (std::size_t k = 1; k < xs_.size(); ++k) {
    if (!(xs_[k - 1] < xs_[k])) {
      throw InvalidSeries("xs must be strictly increasing (index " + std::to_string(k) + ")");
    }
  }
}

template <class T>
BasicSeries<T> BasicSeries<T>::on_unit_grid(std::vector<T> ys) {
  auto xs = unit_grid<T>(ys.size());
  return BasicSeries(std::move(xs), std::move(ys));
}

template <class T>
bool BasicSeries<T>::is_equidistant(double tol) const {
  const std::size_t gaps = xs_.size() - 1;
  const T mean_gap = x_span() / T(static_cast<long long>(gaps));
  const T bound = T(tol) * mean_gap;
  for (std::size_t k = 1; k < xs_.size(); ++k) {
    T dev = (xs_[k] - xs_[k - 1]) - mean_gap;
    if (dev < 0) dev = -dev;
    if (dev > bound) return false;
  }
  return true;
}

template <class T>
std::vector<T> unit_grid(std::size_t n) {
  std::vector<T> xs(n);
  if (n == 1) return xs;
  const auto last = static_cast<long long>(n - 1);
  for (std::size_t k = 0; k < n; ++k) xs[k] = T(static_cast<long long>(k)) / T(last);
  return xs;
}

template class BasicSeries<double>;
template class BasicSeries<Rational>;
template std::vector<double> unit_grid<double>(std::size_t);
template std::vector<Rational> unit_grid<Rational>(std::size_t);

}  // namespace trendwalk
