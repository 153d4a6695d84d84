#pragma once

// Seeded synthetic data: y_k = slope * x_k + intercept + n_k.
//
// Engine: std::mt19937_64, seeded through std::seed_seq from the 64-bit seed
// and a 64-bit stream index. Distributions come from <random>, so a given
// (spec, seed) reproduces bit for bit under the same standard library.

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "trendwalk/series.hpp"

namespace trendwalk {

struct GaussianNoise {
  double mean = 0.0;
  double variance = 1.0;  // >= 0; zero yields the mean exactly
};

struct BetaNoise {
  double alpha = 5.0;
  double beta = 1.0;
};

struct UniformNoise {
  double lo = -1.0;
  double hi = 1.0;
};

struct DiscreteNoise {
  std::vector<double> values;
  std::vector<double> weights;  // nonnegative, sum to 1
};

using NoiseFamily = std::variant<GaussianNoise, BetaNoise, UniformNoise, DiscreteNoise>;

struct NoiseSpec {
  NoiseFamily family = GaussianNoise{};
  std::uint64_t seed = 0;

  // Throws std::invalid_argument on a parameter outside its domain.
  void validate() const;
  double mean() const;
  double variance() const;
  std::string describe() const;
};

struct UnitGrid {};

struct EquidistantGrid {
  double x0 = 0.0;
  double span = 1.0;
};

// Exponential waiting times, rescaled onto [0, 1].
struct PoissonGrid {
  double rate = 1.0;
  std::uint64_t seed = 0;
};

struct GridSpec {
  std::variant<UnitGrid, EquidistantGrid, PoissonGrid> kind = UnitGrid{};
  std::size_t n = 2;

  void validate() const;
  std::string kind_name() const;
  bool is_equidistant() const { return !std::holds_alternative<PoissonGrid>(kind); }
};

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream = 0);

// Draws i.i.d. samples from one NoiseSpec. Single-threaded per instance.
class NoiseSampler {
 public:
  explicit NoiseSampler(const NoiseSpec& spec, std::uint64_t stream = 0);

  double operator()();
  void fill(std::span<double> out);

 private:
  using Dist = std::variant<std::normal_distribution<double>,
                            std::pair<std::gamma_distribution<double>, std::gamma_distribution<double>>,
                            std::uniform_real_distribution<double>, std::discrete_distribution<std::size_t>>;

  std::mt19937_64 engine_;
  Dist dist_;
  std::vector<double> values_;
  double constant_ = 0.0;
  bool degenerate_ = false;
};

// Poisson grids draw their gaps from the given stream of the grid seed.
std::vector<double> make_grid(const GridSpec& spec, std::uint64_t stream = 0);

// Grid drawn from spec; noise drawn from a sampler on stream 0 of noise.seed.
SampleSeries gen_series(const GridSpec& grid, double true_slope, double true_intercept,
                        const NoiseSpec& noise);

// Same, with the noise taken from an existing sampler.
SampleSeries gen_series(std::vector<double> xs, double true_slope, double true_intercept,
                        NoiseSampler& sampler);

}  // namespace trendwalk
