#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "trendwalk/numeric.hpp"
#include "trendwalk/series.hpp"

namespace trendwalk {

enum class FitMethod { DW, LlsGeneral, LlsEquidistant };

std::string_view to_string(FitMethod m);

// residuals[k] = y_k - slope * x_k - intercept, ssr = sum of residuals^2.
template <class T>
struct BasicFit {
  T slope{};
  T intercept{};
  FitMethod method = FitMethod::DW;
  std::vector<T> residuals;
  T ssr{};
};

using FitResult = BasicFit<double>;
using ExactFit = BasicFit<Rational>;

// x~_k = (n+1)/2 - k for k = 1..n. Zero sum, squared norm (n^3 - n)/12.
template <class T>
std::vector<T> tilt_vector(std::size_t n);

// Slope that annuls the signed area of the residual walk:
//   A(y) / A(x) = -12 / (n(n+1)) * sum z_k, divided by x_N - x_1
// so it is expressed per unit of x. Throws NotEquidistant unless the grid is
// equidistant within tol.
template <class T>
T dw_slope(const BasicSeries<T>& series, double tol = kDefaultEquidistanceTol);

// Normal-equation slope for arbitrary abscissas, with intercept, residuals
// and ssr. This is the reference every other route is checked against.
template <class T>
BasicFit<T> lls_slope_general(const BasicSeries<T>& series);

// 12(n-1)/(n(n+1)) * sum y_k (x_k - 1/2). Valid only on the equidistant
// unit grid x_k = (k-1)/(n-1); anything else throws NotEquidistant.
template <class T>
T lls_slope_equidistant(const BasicSeries<T>& series, double tol = kDefaultEquidistanceTol);

// Projection of y onto the centered index, -(y . x~) / (x~ . x~), converted to
// y per unit x like dw_slope.
template <class T>
T projection_slope(const BasicSeries<T>& series, double tol = kDefaultEquidistanceTol);

// mean(y_k - slope * x_k)
template <class T>
T dw_intercept(const BasicSeries<T>& series, const T& slope);

template <class T>
std::vector<T> residuals(const BasicSeries<T>& series, const T& slope, const T& intercept);

// dw_slope + dw_intercept packaged like lls_slope_general.
template <class T>
BasicFit<T> fit_dw(const BasicSeries<T>& series, double tol = kDefaultEquidistanceTol);

// A(y) / A(x) with both walks built in index space, no equidistance needed.
// Equals the LLS slope on equidistant grids, approximates it otherwise.
template <class T>
T area_ratio_slope(const BasicSeries<T>& series);

// Evaluates  sum_k sum_{j<=k} (y_j - ybar)  and  sum_k y_k ((n+1)/2 - k)
// independently. Exact equality for Rational; for double the two must agree
// to rel_tol relative to the magnitude of the summands.
template <class T>
bool appendix_b_identity_check(std::span<const T> ys, double rel_tol = 1e-12);

}  // namespace trendwalk
