#pragma once

// Monte Carlo checks of the area statistics and the irregular-grid study.
//
// Realization i draws its noise from stream i of the master seed, results are
// stored per realization and reduced in realization order. The summary is
// therefore bitwise identical for any worker count.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trendwalk/synth.hpp"

namespace trendwalk {

struct Histogram {
  double lo = 0.0;
  double width = 0.0;
  std::vector<std::uint64_t> counts;
};

struct EnsembleOptions {
  unsigned threads = 1;
  std::optional<std::size_t> bins;  // Freedman-Diaconis when empty
};

struct EnsembleSummary {
  std::size_t n = 0;
  std::size_t realizations = 0;
  double noise_variance = 0.0;
  double mean_area = 0.0;
  double var_area = 0.0;
  double theory_var_area = 0.0;  // (n^3 - n)/12 * sigma^2
  double mean_slope = 0.0;
  double var_slope = 0.0;
  double theory_var_slope = 0.0;  // 12(n-1)/(n(n+1)) * sigma^2
  Histogram histogram;
  // Unpinned walk of centered noise, S_1..S_n.
  double mean_zero_crossings = 0.0;
  std::size_t mode_zero_crossings = 0;
  // Pinned data walk, interior positions.
  double mean_zero_crossings_pinned = 0.0;
  std::size_t mode_zero_crossings_pinned = 0;
  // Sup distance to the large-n Gaussian area law; 0 when sigma == 0.
  double ks_statistic = 0.0;
};

// Pure noise (slope 0, intercept 0) on the unit grid.
EnsembleSummary run_area_ensemble(std::size_t n, const NoiseSpec& noise, std::size_t realizations,
                                  const EnsembleOptions& options = {});

struct IrregularComparison {
  std::string grid_kind;
  std::size_t n = 0;
  std::size_t realizations = 0;
  std::size_t excluded = 0;  // realizations with a degenerate A(x)
  std::vector<double> dw_ratio_slopes;
  std::vector<double> lls_slopes;
  double max_rel_dev = 0.0;
  double mean_rel_dev = 0.0;
};

// Per realization: A(y)/A(x) from index-space walks against the LLS slope.
// Poisson grids are redrawn each realization. Relative deviation is
// |dw - lls| / max(|lls|, 1).
IrregularComparison compare_irregular(const GridSpec& grid, double true_slope, const NoiseSpec& noise,
                                      std::size_t realizations, const EnsembleOptions& options = {});

Histogram freedman_diaconis(std::span<const double> sample, std::optional<std::size_t> bins = {});

// Kolmogorov-Smirnov distance between the sample and N(0, sd^2).
double ks_statistic_normal(std::span<const double> sample, double sd);

}  // namespace trendwalk
