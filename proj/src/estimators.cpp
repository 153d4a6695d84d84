#include "trendwalk/estimators.hpp"

#include <cmath>

#include "simd/eft.hpp"
#include "trendwalk/error.hpp"
#include "trendwalk/simd/kernels.hpp"
#include "trendwalk/walk.hpp"

namespace trendwalk {
namespace {

template <class T>
T abs_value(const T& x) {
  return x < 0 ? T(-x) : x;
}

template <class T>
T from_size(std::size_t n) {
  return T(static_cast<long long>(n));
}

template <class T>
void require_equidistant(const BasicSeries<T>& series, double tol) {
  if (!series.is_equidistant(tol)) throw NotEquidistant();
}

template <class T>
std::vector<T> shifted(std::span<const T> xs, const T& c) {
  std::vector<T> out(xs.size());
  if constexpr (std::is_same_v<T, double>) {
    simd::kernels().shift(xs, c, out);
  } else {
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = xs[i] - c;
  }
  return out;
}

}  // namespace

std::string_view to_string(FitMethod m) {
  switch (m) {
    case FitMethod::DW:
      return "dw";
    case FitMethod::LlsGeneral:
      return "lls_general";
    case FitMethod::LlsEquidistant:
      return "lls_equidistant";
  }
  return "unknown";
}

template <class T>
std::vector<T> tilt_vector(std::size_t n) {
  std::vector<T> v(n);
  const T center = from_size<T>(n + 1) / T(2);
  for (std::size_t k = 1; k <= n; ++k) v[k - 1] = center - from_size<T>(k);
  return v;
}

template <class T>
T dw_slope(const BasicSeries<T>& series, double tol) {
  require_equidistant(series, tol);
  const auto n = static_cast<std::int64_t>(series.size());
  const T area = signed_area(build_walk(series));
  return area / reference_area(n).as<T>() / series.x_span();
}

template <class T>
BasicFit<T> lls_slope_general(const BasicSeries<T>& series) {
  const auto xs = series.xs();
  const auto ys = series.ys();
  const T n = from_size<T>(series.size());
  const T sx = sum(xs);
  const T sy = sum(ys);
  const T sxy = dot(xs, ys);
  const T sxx = dot(xs, xs);
  const T denom = n * sxx - sx * sx;
  if (!(denom > 0)) throw ContractViolation("degenerate normal equations: abscissas do not vary");

  BasicFit<T> fit;
  fit.method = FitMethod::LlsGeneral;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = sy / n - fit.slope * (sx / n);
  fit.residuals = residuals(series, fit.slope, fit.intercept);
  fit.ssr = dot(std::span<const T>(fit.residuals), std::span<const T>(fit.residuals));
  return fit;
}

template <class T>
T lls_slope_equidistant(const BasicSeries<T>& series, double tol) {
  require_equidistant(series, tol);
  const T t(tol);
  if (abs_value(series.xs().front()) > t || abs_value(T(series.xs().back() - T(1))) > t) {
    throw NotEquidistant();
  }
  const std::size_t n = series.size();
  const auto centered = shifted<T>(series.xs(), T(1) / T(2));
  const T weight = T(12) * from_size<T>(n - 1) / (from_size<T>(n) * from_size<T>(n + 1));
  return weight * dot(series.ys(), std::span<const T>(centered));
}

template <class T>
T projection_slope(const BasicSeries<T>& series, double tol) {
  require_equidistant(series, tol);
  const std::size_t n = series.size();
  const auto tilt = tilt_vector<T>(n);
  const std::span<const T> tv(tilt);
  const T per_step = -dot(series.ys(), tv) / dot(tv, tv);
  return per_step * from_size<T>(n - 1) / series.x_span();
}

template <class T>
std::vector<T> residuals(const BasicSeries<T>& series, const T& slope, const T& intercept) {
  std::vector<T> r(series.size());
  if constexpr (std::is_same_v<T, double>) {
    simd::kernels().residuals(series.ys(), series.xs(), slope, intercept, r);
  } else {
    for (std::size_t k = 0; k < r.size(); ++k) {
      r[k] = series.ys()[k] - slope * series.xs()[k] - intercept;
    }
  }
  return r;
}

template <class T>
T dw_intercept(const BasicSeries<T>& series, const T& slope) {
  const auto r = residuals(series, slope, T(0));
  return sum(std::span<const T>(r)) / from_size<T>(r.size());
}

template <class T>
BasicFit<T> fit_dw(const BasicSeries<T>& series, double tol) {
  BasicFit<T> fit;
  fit.method = FitMethod::DW;
  fit.slope = dw_slope(series, tol);
  fit.intercept = dw_intercept(series, fit.slope);
  fit.residuals = residuals(series, fit.slope, fit.intercept);
  fit.ssr = dot(std::span<const T>(fit.residuals), std::span<const T>(fit.residuals));
  return fit;
}

template <class T>
T area_ratio_slope(const BasicSeries<T>& series) {
  const T ay = signed_area(build_walk(series.ys()));
  const T ax = signed_area(build_walk(series.xs()));
  return ay / ax;
}

template <class T>
bool appendix_b_identity_check(std::span<const T> ys, double rel_tol) {
  const std::size_t n = ys.size();
  if (n < 2) throw InvalidSeries("identity check needs at least 2 samples");

  if constexpr (std::is_same_v<T, double>) {
    simd::eft::Accumulator mean_acc;
    for (double y : ys) mean_acc.add(y);
    const double ybar = mean_acc.value() / static_cast<double>(n);

    // Left side: the double sum, term by term.
    simd::eft::Accumulator lhs;
    double scale = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
      for (std::size_t j = 1; j <= k; ++j) {
        lhs.add(ys[j - 1]);
        lhs.add(-ybar);
        scale += std::abs(ys[j - 1]) + std::abs(ybar);
      }
    }
    // Right side: the tilt-weighted sum.
    simd::eft::Accumulator rhs;
    const double center = static_cast<double>(n + 1) / 2.0;
    for (std::size_t k = 1; k <= n; ++k) {
      rhs.add(ys[k - 1] * (center - static_cast<double>(k)));
    }
    return std::abs(lhs.value() - rhs.value()) <= rel_tol * scale;
  } else {
    const T ybar = sum(ys) / from_size<T>(n);
    T lhs = 0;
    for (std::size_t k = 1; k <= n; ++k) {
      for (std::size_t j = 1; j <= k; ++j) lhs += ys[j - 1] - ybar;
    }
    T rhs = 0;
    const T center = from_size<T>(n + 1) / T(2);
    for (std::size_t k = 1; k <= n; ++k) rhs += ys[k - 1] * (center - from_size<T>(k));
    return lhs == rhs;
  }
}

#define TRENDWALK_INSTANTIATE(T)                                                 \
  template std::vector<T> tilt_vector<T>(std::size_t);                          \
  template T dw_slope<T>(const BasicSeries<T>&, double);                        \
  template BasicFit<T> lls_slope_general<T>(const BasicSeries<T>&);             \
  template T lls_slope_equidistant<T>(const BasicSeries<T>&, double);           \
  template T projection_slope<T>(const BasicSeries<T>&, double);                \
  template T dw_intercept<T>(const BasicSeries<T>&, const T&);                  \
  template std::vector<T> residuals<T>(const BasicSeries<T>&, const T&, const T&); \
  template BasicFit<T> fit_dw<T>(const BasicSeries<T>&, double);                \
  template T area_ratio_slope<T>(const BasicSeries<T>&);                        \
  template bool appendix_b_identity_check<T>(std::span<const T>, double);

TRENDWALK_INSTANTIATE(double)
TRENDWALK_INSTANTIATE(Rational)

#undef TRENDWALK_INSTANTIATE

}  // namespace trendwalk
