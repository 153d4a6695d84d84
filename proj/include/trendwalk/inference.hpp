#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "trendwalk/series.hpp"

namespace trendwalk {

// Standard deviation of the signed area under i.i.d. steps of st.dev. sigma:
// sigma * sqrt((n^3 - n) / 12), polynomial evaluated in integers.
double sigma_area(std::int64_t n, double sigma);

// Variance of the slope on the unit grid: 12(n-1) sigma^2 / (n(n+1)).
// Divide by (x_N - x_1)^2 for a grid of another span.
double slope_variance(std::int64_t n, double sigma);

// sqrt(sum r^2 / dof). Throws InsufficientData unless 1 <= dof < residuals.size().
double estimate_sigma(std::span<const double> residuals, std::int64_t dof);

// Significance of the data-walk trend.
//
// Both t statistics share one ssr. The area route divides by n-1 degrees of
// freedom (slope only), the least-squares route by n-2 (slope and
// intercept), so t_area / t_ls == sqrt((n-1)/(n-2)).
struct SignificanceReport {
  std::int64_t n = 0;
  double area = 0.0;
  double slope = 0.0;
  double intercept = 0.0;
  double ssr = 0.0;
  double sigma_noise = 0.0;     // dof n-1, feeds sigma_area
  double sigma_noise_ls = 0.0;  // dof n-2, feeds the slope standard error
  double sigma_area = 0.0;
  double slope_variance = 0.0;  // in y-per-x units squared
  std::int64_t dof_area = 0;
  std::int64_t dof_ls = 0;
  // Empty when the fit is perfect (ssr == 0 to working precision).
  std::optional<double> t_area;
  std::optional<double> t_ls;
  bool perfect_fit = false;
};

// Requires n >= 3 (InsufficientData) and an equidistant grid (NotEquidistant).
SignificanceReport t_statistics(const SampleSeries& series,
                                double tol = kDefaultEquidistanceTol);

// Large-n density of the signed area under pure noise: a zero-mean Gaussian
// with variance sigma^2 n^3 / 12. Throws std::invalid_argument for sigma <= 0.
double area_pdf(double a, std::int64_t n, double sigma);

// Matching cumulative distribution.
double area_cdf(double a, std::int64_t n, double sigma);

}  // namespace trendwalk
