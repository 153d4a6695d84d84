#include "trendwalk/inference.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "trendwalk/error.hpp"
#include "trendwalk/estimators.hpp"
#include "trendwalk/walk.hpp"

namespace trendwalk {
namespace {

// n^3 - n, exact while it fits.
std::int64_t cubic_minus_linear(std::int64_t n) {
  std::int64_t sq = 0;
  std::int64_t cube = 0;
  if (__builtin_mul_overflow(n, n, &sq) || __builtin_mul_overflow(sq, n, &cube)) {
    throw Overflow("n^3 overflows 64-bit integers for n = " + std::to_string(n));
  }
  return cube - n;
}

double area_variance_scale(std::int64_t n, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("area_pdf needs sigma > 0");
  const double nd = static_cast<double>(n);
  return sigma * sigma * nd * nd * nd / 12.0;
}

}  // namespace

double sigma_area(std::int64_t n, double sigma) {
  if (n < 2) throw InsufficientData("sigma_area needs n >= 2");
  return sigma * std::sqrt(static_cast<double>(cubic_minus_linear(n)) / 12.0);
}

double slope_variance(std::int64_t n, double sigma) {
  if (n < 3) throw InsufficientData("slope_variance needs n >= 3");
  return 12.0 * static_cast<double>(n - 1) * sigma * sigma /
         (static_cast<double>(n) * static_cast<double>(n + 1));
}

double estimate_sigma(std::span<const double> residuals, std::int64_t dof) {
  if (dof < 1 || static_cast<std::size_t>(dof) >= residuals.size()) {
    throw InsufficientData("need 1 <= dof < number of residuals (dof " + std::to_string(dof) +
                           ", " + std::to_string(residuals.size()) + " residuals)");
  }
  return std::sqrt(dot(residuals, residuals) / static_cast<double>(dof));
}

SignificanceReport t_statistics(const SampleSeries& series, double tol) {
  const auto n = static_cast<std::int64_t>(series.size());
  if (n < 3) throw InsufficientData("t statistics need n >= 3");

  const FitResult fit = fit_dw(series, tol);
  const double span = series.x_span();

  SignificanceReport rep;
  rep.n = n;
  rep.area = signed_area(build_walk(series));
  rep.slope = fit.slope;
  rep.intercept = fit.intercept;
  rep.ssr = fit.ssr;
  rep.dof_area = n - 1;
  rep.dof_ls = n - 2;
  rep.sigma_noise = estimate_sigma(fit.residuals, rep.dof_area);
  rep.sigma_noise_ls = estimate_sigma(fit.residuals, rep.dof_ls);
  rep.sigma_area = sigma_area(n, rep.sigma_noise);
  rep.slope_variance = slope_variance(n, rep.sigma_noise_ls) / (span * span);

  double abs_sum = 0.0;
  for (double y : series.ys()) abs_sum += std::abs(y);
  const double fit_floor = 64.0 * std::numeric_limits<double>::epsilon() * abs_sum;
  rep.perfect_fit = std::sqrt(fit.ssr) <= fit_floor;
  if (!rep.perfect_fit) {
    rep.t_area = rep.area / rep.sigma_area;
    rep.t_ls = rep.slope / std::sqrt(rep.slope_variance);
  }
  return rep;
}

double area_pdf(double a, std::int64_t n, double sigma) {
  const double var = area_variance_scale(n, sigma);
  return std::exp(-a * a / (2.0 * var)) / std::sqrt(2.0 * std::numbers::pi * var);
}

double area_cdf(double a, std::int64_t n, double sigma) {
  const double var = area_variance_scale(n, sigma);
  return 0.5 * std::erfc(-a / std::sqrt(2.0 * var));
}

}  // namespace trendwalk
