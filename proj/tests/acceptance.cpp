// Acceptance suite: one line per criterion, nonzero exit when any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli_runner.hpp"
#include "trendwalk/ensemble.hpp"
#include "trendwalk/estimators.hpp"
#include "trendwalk/inference.hpp"
#include "trendwalk/io.hpp"
#include "trendwalk/synth.hpp"
#include "trendwalk/walk.hpp"

using namespace trendwalk;
using nlohmann::json;

namespace {

enum class Status { Pass, Fail, Skip };

struct Outcome {
  Status status;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome verdict(bool ok, std::string detail) { return {ok ? Status::Pass : Status::Fail, std::move(detail)}; }

struct TheoremCase {
  SampleSeries series;
  double dw;
  double lls;
};

// The randomized cases shared by criteria 1 and 4.
std::vector<TheoremCase>& theorem_cases() {
  static std::vector<TheoremCase> cases;
  return cases;
}

NoiseSpec random_family(std::mt19937_64& rng, std::uint64_t seed) {
  std::uniform_real_distribution<double> u(0.01, 3.0);
  switch (rng() % 4) {
    case 0: return {GaussianNoise{0.0, u(rng)}, seed};
    case 1: return {BetaNoise{5.0, 1.0}, seed};
    case 2: return {UniformNoise{-u(rng), u(rng)}, seed};
    default: return {DiscreteNoise{{-1.0, 1.0}, {0.5, 0.5}}, seed};
  }
}

Outcome c1_theorem() {
  std::mt19937_64 rng(20240101);
  std::uniform_real_distribution<double> coef(-10.0, 10.0);
  std::uniform_int_distribution<std::size_t> size(2, 200);
  auto& cases = theorem_cases();
  cases.clear();
  cases.reserve(10000);
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const std::size_t n = size(rng);
    const NoiseSpec noise = random_family(rng, rng());
    GridSpec grid{UnitGrid{}, n};
    if (rng() % 2) grid.kind = EquidistantGrid{coef(rng), std::abs(coef(rng)) + 0.1};
    const SampleSeries s = gen_series(grid, coef(rng), coef(rng), noise);
    const double dw = dw_slope(s);
    const double lls = lls_slope_general(s).slope;
    worst = std::max(worst, std::abs(dw - lls) / std::max(1.0, std::abs(lls)));
    cases.push_back({s, dw, lls});
  }
  const double dt = seconds_since(t0);
  return verdict(worst <= 1e-10 && dt < 10.0,
                 fmt("10000 cases, max rel dev %.3g (<= 1e-10), %.2f s (< 10 s)", worst, dt));
}

Outcome c2_exact() {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> num(-10000, 10000);
  std::uniform_int_distribution<int> den(1, 1000);
  std::uniform_int_distribution<std::size_t> size(2, 60);
  int mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    std::vector<Rational> ys(size(rng));
    for (auto& y : ys) y = Rational(num(rng), den(rng));
    const ExactSeries s = ExactSeries::on_unit_grid(ys);
    const Rational dw = dw_slope(s);
    if (dw != lls_slope_general(s).slope || !appendix_b_identity_check<Rational>(ys)) ++mismatches;
  }
  return verdict(mismatches == 0, fmt("1000 rational cases, %d with nonzero error", mismatches));
}

Outcome c3_reference_area() {
  int bad = 0;
  for (std::int64_t n = 2; n <= 500; ++n) {
    const Fraction ref = reference_area(n);
    const Rational want(n * (n + 1), 12);
    Rational parabola_sum = 0;
    for (const Rational& z : reference_parabola<Rational>(n)) parabola_sum += z;
    if (ref.to_rational() != want || -parabola_sum != want) ++bad;
  }
  const Fraction r24 = reference_area(24);
  const bool ok24 = r24.num == 50 && r24.den == 1;
  return verdict(bad == 0 && ok24, fmt("n = 2..500: %d mismatches; reference_area(24) = %lld/%lld", bad,
                                       static_cast<long long>(r24.num), static_cast<long long>(r24.den)));
}

Outcome c4_residual_annulment() {
  const auto& cases = theorem_cases();
  if (cases.empty()) return {Status::Fail, "criterion 1 cases unavailable"};
  double worst = 0.0;
  for (const auto& c : cases) {
    double abs_y = 0.0;
    for (double y : c.series.ys()) abs_y += std::abs(y);
    const auto r = residuals(c.series, c.dw, dw_intercept(c.series, c.dw));
    worst = std::max(worst, std::abs(signed_area(build_walk<double>(r))) / abs_y);
  }
  return verdict(worst <= 1e-9, fmt("%zu cases, max |A_res| / sum|y| = %.3g (<= 1e-9)", cases.size(), worst));
}

Outcome c5_worked_example() {
  const auto path = std::filesystem::path(TRENDWALK_FIXTURE_DIR) / "sm24.csv";
  if (!std::filesystem::exists(path)) return {Status::Skip, "fixture " + path.string() + " not present"};
  const SampleSeries s = read_series(path);
  const TrendReport r = make_trend_report(s, ReportMethod::Both);
  const bool ratio_ok = r.t_area && r.t_ls &&
                        std::abs(*r.t_area / *r.t_ls - std::sqrt(23.0 / 22.0)) <= 1e-12;
  const bool ok = std::abs(r.area - 58.35) <= 0.01 && std::abs(r.slope - 1.17) <= 0.005 &&
                  std::abs(r.intercept - 0.24) <= 0.005 && std::abs(r.ssr - 20.6) <= 0.05 &&
                  r.zero_crossings_residual == 5 && r.zero_crossings_raw == 1 && ratio_ok &&
                  std::abs(*r.t_area - 2.05) <= 0.15 * 2.05 && std::abs(*r.t_ls - 2.01) <= 0.15 * 2.01;
  return verdict(ok, fmt("area %.4f slope %.4f intercept %.4f ssr %.3f zeros %lld/%lld t_A %.3f t_LS %.3f",
                         r.area, r.slope, r.intercept, r.ssr, static_cast<long long>(r.zero_crossings_raw),
                         static_cast<long long>(r.zero_crossings_residual), r.t_area.value_or(NAN),
                         r.t_ls.value_or(NAN)));
}

struct SmallEnsemble {
  EnsembleSummary summary;
  double seconds = 0.0;
};

const SmallEnsemble& ensemble24() {
  static const SmallEnsemble e = [] {
    const auto t0 = Clock::now();
    SmallEnsemble r;
    r.summary = run_area_ensemble(24, {GaussianNoise{0.0, 1.0}, 2718}, 100000);
    r.seconds = seconds_since(t0);
    return r;
  }();
  return e;
}

Outcome c6_variance_law() {
  const auto& e = ensemble24();
  const double rel = std::abs(e.summary.var_area - 1150.0) / 1150.0;
  return verdict(rel <= 0.05 && e.seconds < 30.0,
                 fmt("var(A) = %.1f vs 1150 (rel %.4f <= 0.05), %.2f s (< 30 s)", e.summary.var_area, rel,
                     e.seconds));
}

Outcome c7_slope_variance() {
  const auto& e = ensemble24();
  const double rel = std::abs(e.summary.var_slope - 0.46) / 0.46;
  return verdict(rel <= 0.05, fmt("var(slope) = %.4f vs 0.46 (rel %.4f <= 0.05)", e.summary.var_slope, rel));
}

Outcome c8_asymptotic_pdf() {
  const auto s = run_area_ensemble(200, {GaussianNoise{0.0, 1.0}, 31415}, 200000);
  const double sd = std::sqrt(200.0 * 200.0 * 200.0 / 12.0);
  const int m = 20000;
  const double lo = -10 * sd, h = 20 * sd / m;
  double mass = 0.5 * (area_pdf(lo, 200, 1.0) + area_pdf(-lo, 200, 1.0));
  for (int i = 1; i < m; ++i) mass += area_pdf(lo + i * h, 200, 1.0);
  mass *= h;
  return verdict(s.ks_statistic <= 0.01 && std::abs(mass - 1.0) <= 1e-6,
                 fmt("KS = %.5f (<= 0.01), pdf mass = %.9f (1 +/- 1e-6)", s.ks_statistic, mass));
}

Outcome c9_zero_crossings() {
  const auto& e = ensemble24();
  const double target = std::sqrt(24.0);
  const double rel = std::abs(e.summary.mean_zero_crossings - target) / target;
  return verdict(rel <= 0.15 && e.summary.mode_zero_crossings == 0,
                 fmt("mean %.3f vs sqrt(24) = %.3f (rel %.3f <= 0.15), mode %zu (== 0); pinned walk mean %.3f",
                     e.summary.mean_zero_crossings, target, rel, e.summary.mode_zero_crossings,
                     e.summary.mean_zero_crossings_pinned));
}

Outcome c10_irregular() {
  const NoiseSpec noise{GaussianNoise{0.0, 0.25}, 7};
  double worst = 0.0;
  for (const GridSpec& g : {GridSpec{UnitGrid{}, 24}, GridSpec{UnitGrid{}, 200},
                            GridSpec{EquidistantGrid{-4.0, 9.0}, 50}}) {
    worst = std::max(worst, compare_irregular(g, 1.5, noise, 1000).max_rel_dev);
  }
  const auto r = trendwalk::testing::run_cli("compare --grid poisson:1 --n 50 --realizations 1000 --seed 3 --json");
  bool schema_ok = false;
  double poisson_max = NAN;
  try {
    const json doc = json::parse(r.out);
    const IrregularComparison c = open_envelope(doc, "irregular_comparison").get<IrregularComparison>();
    poisson_max = c.max_rel_dev;
    schema_ok = r.exit_code == 0 && c.realizations == 1000 && c.dw_ratio_slopes.size() == 1000 &&
                std::isfinite(c.max_rel_dev) && std::isfinite(c.mean_rel_dev);
  } catch (const std::exception&) {
    schema_ok = false;
  }
  return verdict(worst <= 1e-10 && schema_ok,
                 fmt("equidistant max rel dev %.3g (<= 1e-10); poisson JSON %s, max rel dev %.4g", worst,
                     schema_ok ? "valid" : "INVALID", poisson_max));
}

Outcome c11_determinism() {
  using trendwalk::testing::run_cli;
  const std::vector<std::string> commands{
      "generate --n 100 --slope 0.5 --noise beta:5,1 --seed 11",
      "generate --n 100 --grid poisson:2 --seed 11",
      "ensemble --n 24 --realizations 20000 --seed 11 --json --threads 1",
      "ensemble --n 24 --realizations 20000 --seed 11 --json --threads 4",
      "compare --grid poisson:1 --n 40 --realizations 500 --seed 11 --json --threads 3",
  };
  std::vector<std::string> first;
  int diffs = 0;
  for (const auto& cmd : commands) {
    const auto a = run_cli(cmd);
    const auto b = run_cli(cmd);
    if (a.exit_code != 0 || a.out != b.out || a.out.empty()) ++diffs;
    first.push_back(a.out);
  }
  const bool threads_agree = first[2] == first[3];
  return verdict(diffs == 0 && threads_agree,
                 fmt("%zu commands run twice, %d differ; 1 vs 4 threads %s", commands.size(), diffs,
                     threads_agree ? "identical" : "DIFFER"));
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"C1 theorem equivalence", c1_theorem},
      {"C2 exact-arithmetic equivalence", c2_exact},
      {"C3 reference area", c3_reference_area},
      {"C4 residual annulment", c4_residual_annulment},
      {"C5 worked example", c5_worked_example},
      {"C6 area variance law", c6_variance_law},
      {"C7 slope variance", c7_slope_variance},
      {"C8 asymptotic area pdf", c8_asymptotic_pdf},
      {"C9 zero crossings", c9_zero_crossings},
      {"C10 irregular grids", c10_irregular},
      {"C11 determinism", c11_determinism},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {Status::Fail, std::string("exception: ") + e.what()};
    }
    const char* tag = o.status == Status::Pass ? "[PASS]" : o.status == Status::Skip ? "[SKIP]" : "[FAIL]";
    if (o.status == Status::Fail) ++failed;
    std::printf("%s %s: %s\n", tag, name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
