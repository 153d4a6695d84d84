#include "trendwalk/synth.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "trendwalk/error.hpp"

namespace trendwalk {
namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

void check(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

void NoiseSpec::validate() const {
  std::visit(Overloaded{
                 [](const GaussianNoise& g) {
                   check(std::isfinite(g.mean), "gaussian mean must be finite");
                   check(std::isfinite(g.variance) && g.variance >= 0.0,
                         "gaussian variance must be >= 0");
                 },
                 [](const BetaNoise& b) {
                   check(b.alpha > 0.0 && b.beta > 0.0 && std::isfinite(b.alpha) &&
                             std::isfinite(b.beta),
                         "beta parameters must be > 0");
                 },
                 [](const UniformNoise& u) {
                   check(std::isfinite(u.lo) && std::isfinite(u.hi) && u.lo < u.hi,
                         "uniform bounds need lo < hi");
                 },
                 [](const DiscreteNoise& d) {
                   check(!d.values.empty(), "discrete noise needs at least one value");
                   check(d.values.size() == d.weights.size(),
                         "discrete values and weights differ in length");
                   double total = 0.0;
                   for (double w : d.weights) {
                     check(w >= 0.0 && std::isfinite(w), "discrete weights must be >= 0");
                     total += w;
                   }
                   check(std::abs(total - 1.0) <= 1e-12, "discrete weights must sum to 1");
                 },
             },
             family);
}

double NoiseSpec::mean() const {
  return std::visit(Overloaded{
                        [](const GaussianNoise& g) { return g.mean; },
                        [](const BetaNoise& b) { return b.alpha / (b.alpha + b.beta); },
                        [](const UniformNoise& u) { return 0.5 * (u.lo + u.hi); },
                        [](const DiscreteNoise& d) {
                          double m = 0.0;
                          for (std::size_t i = 0; i < d.values.size(); ++i) m += d.values[i] * d.weights[i];
                          return m;
                        },
                    },
                    family);
}

double NoiseSpec::variance() const {
  return std::visit(Overloaded{
                        [](const GaussianNoise& g) { return g.variance; },
                        [](const BetaNoise& b) {
                          const double s = b.alpha + b.beta;
                          return b.alpha * b.beta / (s * s * (s + 1.0));
                        },
                        [](const UniformNoise& u) { return (u.hi - u.lo) * (u.hi - u.lo) / 12.0; },
                        [this](const DiscreteNoise& d) {
                          const double m = mean();
                          double v = 0.0;
                          for (std::size_t i = 0; i < d.values.size(); ++i) {
                            v += d.weights[i] * (d.values[i] - m) * (d.values[i] - m);
                          }
                          return v;
                        },
                    },
                    family);
}

std::string NoiseSpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(Overloaded{
                 [&](const GaussianNoise& g) { os << "gaussian:" << g.mean << ',' << g.variance; },
                 [&](const BetaNoise& b) { os << "beta:" << b.alpha << ',' << b.beta; },
                 [&](const UniformNoise& u) { os << "uniform:" << u.lo << ',' << u.hi; },
                 [&](const DiscreteNoise& d) {
                   os << "discrete:";
                   for (std::size_t i = 0; i < d.values.size(); ++i) {
                     if (i) os << ',';
                     os << d.values[i] << '=' << d.weights[i];
                   }
                 },
             },
             family);
  return os.str();
}

void GridSpec::validate() const {
  check(n >= 2, "grid needs n >= 2");
  std::visit(Overloaded{
                 [](const UnitGrid&) {},
                 [](const EquidistantGrid& g) {
                   check(std::isfinite(g.x0) && std::isfinite(g.span) && g.span > 0.0,
                         "equidistant grid needs a finite span > 0");
                 },
                 [](const PoissonGrid& g) {
                   check(std::isfinite(g.rate) && g.rate > 0.0, "poisson grid needs rate > 0");
                 },
             },
             kind);
}

std::string GridSpec::kind_name() const {
  return std::visit(Overloaded{
                        [](const UnitGrid&) { return std::string("unit"); },
                        [](const EquidistantGrid&) { return std::string("equidistant"); },
                        [](const PoissonGrid&) { return std::string("poisson"); },
                    },
                    kind);
}

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

NoiseSampler::NoiseSampler(const NoiseSpec& spec, std::uint64_t stream)
    : engine_(make_engine(spec.seed, stream)) {
  spec.validate();
  std::visit(Overloaded{
                 [&](const GaussianNoise& g) {
                   if (g.variance == 0.0) {
                     degenerate_ = true;
                     constant_ = g.mean;
                   } else {
                     dist_ = std::normal_distribution<double>(g.mean, std::sqrt(g.variance));
                   }
                 },
                 [&](const BetaNoise& b) {
                   dist_ = std::pair{std::gamma_distribution<double>(b.alpha, 1.0),
                                     std::gamma_distribution<double>(b.beta, 1.0)};
                 },
                 [&](const UniformNoise& u) {
                   dist_ = std::uniform_real_distribution<double>(u.lo, u.hi);
                 },
                 [&](const DiscreteNoise& d) {
                   values_ = d.values;
                   dist_ = std::discrete_distribution<std::size_t>(d.weights.begin(), d.weights.end());
                 },
             },
             spec.family);
}

double NoiseSampler::operator()() {
  if (degenerate_) return constant_;
  return std::visit(
      Overloaded{
          [&](std::normal_distribution<double>& d) { return d(engine_); },
          [&](std::pair<std::gamma_distribution<double>, std::gamma_distribution<double>>& d) {
            const double x = d.first(engine_);
            const double y = d.second(engine_);
            return x / (x + y);
          },
          [&](std::uniform_real_distribution<double>& d) { return d(engine_); },
          [&](std::discrete_distribution<std::size_t>& d) { return values_[d(engine_)]; },
      },
      dist_);
}

void NoiseSampler::fill(std::span<double> out) {
  for (double& v : out) v = (*this)();
}

std::vector<double> make_grid(const GridSpec& spec, std::uint64_t stream) {
  spec.validate();
  const std::size_t n = spec.n;
  return std::visit(
      Overloaded{
          [n](const UnitGrid&) { return unit_grid<double>(n); },
          [n](const EquidistantGrid& g) {
            std::vector<double> xs(n);
            const double last = static_cast<double>(n - 1);
            for (std::size_t k = 0; k < n; ++k) xs[k] = g.x0 + g.span * (static_cast<double>(k) / last);
            return xs;
          },
          [n, stream](const PoissonGrid& g) {
            auto engine = make_engine(g.seed, stream);
            std::exponential_distribution<double> wait(g.rate);
            std::vector<double> xs(n);
            xs[0] = 0.0;
            for (std::size_t k = 1; k < n; ++k) {
              double gap = 0.0;
              while (!(gap > 0.0)) gap = wait(engine);
              xs[k] = xs[k - 1] + gap;
            }
            const double total = xs.back();
            for (double& x : xs) x /= total;
            return xs;
          },
      },
      spec.kind);
}

SampleSeries gen_series(std::vector<double> xs, double true_slope, double true_intercept,
                        NoiseSampler& sampler) {
  std::vector<double> ys(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double signal = true_slope * xs[k] + true_intercept;
    ys[k] = signal + sampler();
  }
  return SampleSeries(std::move(xs), std::move(ys));
}

SampleSeries gen_series(const GridSpec& grid, double true_slope, double true_intercept,
                        const NoiseSpec& noise) {
  NoiseSampler sampler(noise);
  return gen_series(make_grid(grid), true_slope, true_intercept, sampler);
}

}  // namespace trendwalk
