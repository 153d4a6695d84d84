// trendwalk: data-walk trend estimation from the command line.
//
// Exit codes: 0 success (or significant trend), 2 trend below --confidence,
// 1 input or usage error.

#include <CLI11.hpp>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "trendwalk/error.hpp"
#include "trendwalk/estimators.hpp"
#include "trendwalk/io.hpp"
#include "trendwalk/walk.hpp"

namespace {

using namespace trendwalk;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNotSignificant = 2;

std::uint64_t effective_seed(std::uint64_t flag_seed) {
  const char* env = std::getenv("TRENDWALK_SEED");
  if (!env || !*env) return flag_seed;
  const std::string s(env);
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used, 10);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.front() == '-') throw Error("TRENDWALK_SEED is not an unsigned integer: '" + s + "'");
  return v;
}

// Writes text to the file, or to stdout when path is empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

struct FitArgs {
  std::string input;
  std::string method = "both";
  bool json = false;
  bool text = false;
  std::optional<double> confidence;
};

int run_fit(const FitArgs& a) {
  const SampleSeries series = read_series(std::filesystem::path(a.input));
  const ReportMethod method = parse_report_method(a.method);
  if (method != ReportMethod::Lls && !series.is_equidistant()) {
    std::cerr << "error: " << NotEquidistant().what() << '\n';
    return kExitError;
  }
  const TrendReport rep = make_trend_report(series, method);
  if (a.json) {
    std::cout << envelope("trend", json(rep)).dump(2) << '\n';
  } else {
    std::cout << format_text(rep);
  }
  if (a.confidence && !rep.perfect_fit) {
    const auto t = significance_statistic(rep);
    if (!t || std::abs(*t) < *a.confidence) return kExitNotSignificant;
  }
  return kExitOk;
}

struct WalkArgs {
  std::string input;
  std::string output;
  bool residual = false;
  bool with_reference = false;
};

int run_walk(const WalkArgs& a) {
  const SampleSeries series = read_series(std::filesystem::path(a.input));
  std::optional<double> slope;
  if (a.residual || a.with_reference) slope = dw_slope(series);

  const DataWalk walk =
      a.residual ? build_walk<double>(residuals(series, *slope, 0.0)) : build_walk(series);

  std::optional<std::vector<double>> reference;
  if (a.with_reference) {
    // Parabola of the unit-slope walk, scaled to the fitted trend on this grid.
    const double scale = *slope * series.x_span();
    const auto parabola = reference_parabola<double>(static_cast<std::int64_t>(series.size()));
    reference.emplace(series.size() + 1, 0.0);
    for (std::size_t j = 0; j < parabola.size(); ++j) (*reference)[j + 1] = scale * parabola[j];
  }

  std::ostringstream os;
  if (reference) {
    write_walk_csv(os, walk.positions, std::span<const double>(*reference));
  } else {
    write_walk_csv(os, walk.positions);
  }
  emit(a.output, os.str());
  return kExitOk;
}

struct GenerateArgs {
  std::size_t n = 24;
  double slope = 1.0;
  double intercept = 0.0;
  std::string noise = "gaussian:0,1";
  std::uint64_t seed = 0;
  std::string grid = "unit";
  std::string output;
};

int run_generate(const GenerateArgs& a) {
  const std::uint64_t seed = effective_seed(a.seed);
  const NoiseSpec noise = parse_noise(a.noise, seed);
  // The grid gets its own stream so a Poisson grid does not share draws with the noise.
  const GridSpec grid = parse_grid(a.grid, a.n, seed ^ 0x9E3779B97F4A7C15ULL);
  const SampleSeries series = gen_series(grid, a.slope, a.intercept, noise);
  std::ostringstream os;
  write_series_csv(os, series);
  emit(a.output, os.str());
  return kExitOk;
}

struct EnsembleArgs {
  std::size_t n = 24;
  std::size_t realizations = 10000;
  std::string noise = "gaussian:0,1";
  std::uint64_t seed = 0;
  bool json = false;
  unsigned threads = 1;
  std::optional<std::size_t> bins;
  std::string output;
};

int run_ensemble(const EnsembleArgs& a) {
  const NoiseSpec noise = parse_noise(a.noise, effective_seed(a.seed));
  const EnsembleSummary s = run_area_ensemble(a.n, noise, a.realizations, {a.threads, a.bins});
  std::ostringstream os;
  if (a.json) {
    os << envelope("ensemble", json(s)).dump(2) << '\n';
  } else {
    os << "n                    " << s.n << '\n'
       << "realizations         " << s.realizations << '\n'
       << "mean_area            " << format_double(s.mean_area) << '\n'
       << "var_area             " << format_double(s.var_area) << '\n'
       << "theory_var_area      " << format_double(s.theory_var_area) << '\n'
       << "var_slope            " << format_double(s.var_slope) << '\n'
       << "theory_var_slope     " << format_double(s.theory_var_slope) << '\n'
       << "mean_zero_crossings  " << format_double(s.mean_zero_crossings) << " (unpinned), "
       << format_double(s.mean_zero_crossings_pinned) << " (pinned)\n"
       << "mode_zero_crossings  " << s.mode_zero_crossings << " (unpinned), "
       << s.mode_zero_crossings_pinned << " (pinned)\n"
       << "ks_statistic         " << format_double(s.ks_statistic) << '\n';
  }
  emit(a.output, os.str());
  return kExitOk;
}

struct CompareArgs {
  std::string grid = "poisson:1";
  std::size_t n = 50;
  std::size_t realizations = 1000;
  double slope = 1.0;
  std::string noise = "gaussian:0,0.25";
  std::uint64_t seed = 0;
  bool json = false;
  unsigned threads = 1;
  std::string output;
};

int run_compare(const CompareArgs& a) {
  const std::uint64_t seed = effective_seed(a.seed);
  const NoiseSpec noise = parse_noise(a.noise, seed);
  const GridSpec grid = parse_grid(a.grid, a.n, seed ^ 0x9E3779B97F4A7C15ULL);
  const IrregularComparison c = compare_irregular(grid, a.slope, noise, a.realizations, {a.threads, {}});
  std::ostringstream os;
  if (a.json) {
    os << envelope("irregular_comparison", json(c)).dump(2) << '\n';
  } else {
    os << "grid          " << c.grid_kind << '\n'
       << "n             " << c.n << '\n'
       << "realizations  " << c.realizations << " (" << c.excluded << " excluded)\n"
       << "max_rel_dev   " << format_double(c.max_rel_dev) << '\n'
       << "mean_rel_dev  " << format_double(c.mean_rel_dev) << '\n';
  }
  emit(a.output, os.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trend estimation by annulling the signed area of a pinned data walk"};
  app.require_subcommand(1);

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit a line and report area, slope and t statistics");
  fit_cmd->add_option("--input", fit.input, "CSV file with header x,y")->required();
  fit_cmd->add_option("--method", fit.method, "dw, lls or both")
      ->check(CLI::IsMember({"dw", "lls", "both"}));
  auto* json_flag = fit_cmd->add_flag("--json", fit.json, "Emit the JSON report");
  fit_cmd->add_flag("--text", fit.text, "Emit the text report (default)")->excludes(json_flag);
  fit_cmd->add_option("--confidence", fit.confidence,
                      "Exit 2 when |t| is below this threshold");

  WalkArgs walk;
  auto* walk_cmd = app.add_subcommand("walk", "Write walk positions j,z as CSV");
  walk_cmd->add_option("--input", walk.input, "CSV file with header x,y")->required();
  walk_cmd->add_option("--output", walk.output, "Output CSV")->required();
  walk_cmd->add_flag("--residual", walk.residual, "Detrend with the data-walk slope first");
  walk_cmd->add_flag("--with-reference", walk.with_reference,
                     "Append the noise-free parabola scaled by the fitted slope");

  GenerateArgs gen;
  auto* gen_cmd = app.add_subcommand("generate", "Write a synthetic x,y series");
  gen_cmd->add_option("--n", gen.n, "Number of samples")->check(CLI::Range(2, 1 << 30));
  gen_cmd->add_option("--slope", gen.slope);
  gen_cmd->add_option("--intercept", gen.intercept);
  gen_cmd->add_option("--noise", gen.noise, "gaussian:m,v | beta:a,b | uniform:lo,hi | discrete:v=w,...");
  gen_cmd->add_option("--seed", gen.seed, "Overridden by TRENDWALK_SEED");
  gen_cmd->add_option("--grid", gen.grid, "unit | equidistant:x0,span | poisson:rate");
  gen_cmd->add_option("--output", gen.output, "Output CSV (stdout when omitted)");

  EnsembleArgs ens;
  auto* ens_cmd = app.add_subcommand("ensemble", "Monte Carlo area statistics under pure noise");
  ens_cmd->add_option("--n", ens.n)->check(CLI::Range(2, 1 << 30));
  ens_cmd->add_option("--realizations", ens.realizations)->check(CLI::Range(1, 1 << 30));
  ens_cmd->add_option("--noise", ens.noise);
  ens_cmd->add_option("--seed", ens.seed, "Overridden by TRENDWALK_SEED");
  ens_cmd->add_flag("--json", ens.json);
  ens_cmd->add_option("--threads", ens.threads)->check(CLI::Range(1, 1024));
  ens_cmd->add_option("--bins", ens.bins, "Histogram bins (Freedman-Diaconis when omitted)");
  ens_cmd->add_option("--output", ens.output, "Output file (stdout when omitted)");

  CompareArgs cmp;
  auto* cmp_cmd = app.add_subcommand("compare", "Area-ratio slope vs least squares on irregular grids");
  cmp_cmd->add_option("--grid", cmp.grid, "poisson:rate | equidistant:x0,span | unit");
  cmp_cmd->add_option("--n", cmp.n)->check(CLI::Range(2, 1 << 30));
  cmp_cmd->add_option("--realizations", cmp.realizations)->check(CLI::Range(1, 1 << 30));
  cmp_cmd->add_option("--slope", cmp.slope);
  cmp_cmd->add_option("--noise", cmp.noise);
  cmp_cmd->add_option("--seed", cmp.seed, "Overridden by TRENDWALK_SEED");
  cmp_cmd->add_flag("--json", cmp.json);
  cmp_cmd->add_option("--threads", cmp.threads)->check(CLI::Range(1, 1024));
  cmp_cmd->add_option("--output", cmp.output, "Output file (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*fit_cmd) return run_fit(fit);
    if (*walk_cmd) return run_walk(walk);
    if (*gen_cmd) return run_generate(gen);
    if (*ens_cmd) return run_ensemble(ens);
    if (*cmp_cmd) return run_compare(cmp);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
