#include "trendwalk/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include "trendwalk/error.hpp"
#include "trendwalk/estimators.hpp"
#include "trendwalk/inference.hpp"
#include "trendwalk/simd/kernels.hpp"
#include "trendwalk/walk.hpp"

namespace trendwalk {
namespace {

// Runs body(begin, end) over contiguous chunks of [0, count).
template <class Body>
void parallel_chunks(std::size_t count, unsigned threads, Body body) {
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, count));
  if (workers == 1) {
    body(std::size_t{0}, count);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

double mean_of(std::span<const double> xs) { return sum(xs) / static_cast<double>(xs.size()); }

// Unbiased sample variance, two-pass.
double variance_of(std::span<const double> xs, double mean) {
  if (xs.size() < 2) return 0.0;
  std::vector<double> dev(xs.size());
  simd::kernels().shift(xs, mean, dev);
  return dot(dev, dev) / static_cast<double>(xs.size() - 1);
}

std::pair<double, std::size_t> mean_and_mode(std::span<const std::size_t> counts) {
  std::vector<std::size_t> freq;
  std::uint64_t total = 0;
  for (std::size_t c : counts) {
    if (c >= freq.size()) freq.resize(c + 1, 0);
    ++freq[c];
    total += c;
  }
  const auto mode = static_cast<std::size_t>(std::max_element(freq.begin(), freq.end()) - freq.begin());
  return {static_cast<double>(total) / static_cast<double>(counts.size()), mode};
}

}  // namespace

Histogram freedman_diaconis(std::span<const double> sample, std::optional<std::size_t> bins) {
  Histogram h;
  if (sample.empty()) return h;
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const double lo = sorted.front();
  const double hi = sorted.back();
  const double range = hi - lo;

  std::size_t nbins = 1;
  if (bins) {
    nbins = std::max<std::size_t>(1, *bins);
  } else if (range > 0.0) {
    const auto quantile = [&](double q) {
      const double pos = q * static_cast<double>(sorted.size() - 1);
      const auto i = static_cast<std::size_t>(pos);
      const double frac = pos - static_cast<double>(i);
      return i + 1 < sorted.size() ? sorted[i] + frac * (sorted[i + 1] - sorted[i]) : sorted[i];
    };
    const double iqr = quantile(0.75) - quantile(0.25);
    const double width = 2.0 * iqr / std::cbrt(static_cast<double>(sorted.size()));
    if (width > 0.0) nbins = static_cast<std::size_t>(std::clamp(std::ceil(range / width), 1.0, 10000.0));
  }

  h.lo = lo;
  h.width = range > 0.0 ? range / static_cast<double>(nbins) : 1.0;
  h.counts.assign(nbins, 0);
  for (double v : sorted) {
    auto b = static_cast<std::size_t>((v - lo) / h.width);
    h.counts[std::min(b, nbins - 1)] += 1;
  }
  return h;
}

double ks_statistic_normal(std::span<const double> sample, double sd) {
  if (sample.empty() || !(sd > 0.0)) return 0.0;
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const double m = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double cdf = 0.5 * std::erfc(-sorted[i] / (sd * std::numbers::sqrt2));
    d = std::max({d, static_cast<double>(i + 1) / m - cdf, cdf - static_cast<double>(i) / m});
  }
  return d;
}

EnsembleSummary run_area_ensemble(std::size_t n, const NoiseSpec& noise, std::size_t realizations,
                                  const EnsembleOptions& options) {
  noise.validate();
  if (n < 2) throw InsufficientData("ensemble needs n >= 2");
  if (realizations < 1) throw InsufficientData("ensemble needs at least one realization");

  const auto nn = static_cast<std::int64_t>(n);
  const double ref_area = reference_area(nn).to_double();
  const double noise_mean = noise.mean();

  std::vector<double> areas(realizations);
  std::vector<double> slopes(realizations);
  std::vector<std::size_t> crossings(realizations);
  std::vector<std::size_t> crossings_pinned(realizations);

  parallel_chunks(realizations, options.threads, [&](std::size_t begin, std::size_t end) {
    const auto& k = simd::kernels();
    std::vector<double> ys(n);
    std::vector<double> centered(n);
    std::vector<double> path(n + 1);
    for (std::size_t i = begin; i < end; ++i) {
      NoiseSampler sampler(noise, i);
      sampler.fill(ys);
      const DataWalk walk = build_walk<double>(ys);
      areas[i] = signed_area(walk);
      slopes[i] = areas[i] / ref_area;
      crossings_pinned[i] = count_interior_zeros(walk);

      k.shift(ys, noise_mean, centered);
      k.prefix_sum(centered, path);
      crossings[i] = count_sign_changes<double>(std::span<const double>(path).subspan(1));
    }
  });

  EnsembleSummary s;
  s.n = n;
  s.realizations = realizations;
  s.noise_variance = noise.variance();
  s.mean_area = mean_of(areas);
  s.var_area = variance_of(areas, s.mean_area);
  s.theory_var_area = static_cast<double>(nn * nn * nn - nn) / 12.0 * s.noise_variance;
  s.mean_slope = mean_of(slopes);
  s.var_slope = variance_of(slopes, s.mean_slope);
  s.theory_var_slope = 12.0 * static_cast<double>(n - 1) * s.noise_variance /
                       (static_cast<double>(n) * static_cast<double>(n + 1));
  s.histogram = freedman_diaconis(areas, options.bins);
  std::tie(s.mean_zero_crossings, s.mode_zero_crossings) = mean_and_mode(crossings);
  std::tie(s.mean_zero_crossings_pinned, s.mode_zero_crossings_pinned) = mean_and_mode(crossings_pinned);
  const double nd = static_cast<double>(n);
  s.ks_statistic = ks_statistic_normal(areas, std::sqrt(s.noise_variance * nd * nd * nd / 12.0));
  return s;
}

IrregularComparison compare_irregular(const GridSpec& grid, double true_slope, const NoiseSpec& noise,
                                      std::size_t realizations, const EnsembleOptions& options) {
  grid.validate();
  noise.validate();
  if (realizations < 1) throw InsufficientData("comparison needs at least one realization");

  const double nan = std::numeric_limits<double>::quiet_NaN();
  IrregularComparison c;
  c.grid_kind = grid.kind_name();
  c.n = grid.n;
  c.realizations = realizations;
  c.dw_ratio_slopes.assign(realizations, nan);
  c.lls_slopes.assign(realizations, nan);
  std::vector<char> excluded(realizations, 0);

  const std::vector<double> fixed_grid = grid.is_equidistant() ? make_grid(grid) : std::vector<double>{};

  parallel_chunks(realizations, options.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      std::vector<double> xs = grid.is_equidistant() ? fixed_grid : make_grid(grid, i);
      NoiseSampler sampler(noise, i);
      const SampleSeries series = gen_series(std::move(xs), true_slope, 0.0, sampler);

      const double ax = signed_area(build_walk<double>(series.xs()));
      double abs_x = 0.0;
      for (double x : series.xs()) abs_x += std::abs(x);
      if (!(std::abs(ax) > 64.0 * std::numeric_limits<double>::epsilon() *
                               static_cast<double>(series.size()) * abs_x)) {
        excluded[i] = 1;
        continue;
      }
      c.dw_ratio_slopes[i] = signed_area(build_walk<double>(series.ys())) / ax;
      c.lls_slopes[i] = lls_slope_general(series).slope;
    }
  });

  std::vector<double> devs;
  devs.reserve(realizations);
  for (std::size_t i = 0; i < realizations; ++i) {
    if (excluded[i]) {
      ++c.excluded;
      continue;
    }
    const double lls = c.lls_slopes[i];
    devs.push_back(std::abs(c.dw_ratio_slopes[i] - lls) / std::max(std::abs(lls), 1.0));
  }
  if (!devs.empty()) {
    c.max_rel_dev = *std::max_element(devs.begin(), devs.end());
    c.mean_rel_dev = mean_of(devs);
  }
  return c;
}

}  // namespace trendwalk
