#include <cmath>
#include <limits>
#include <sstream>

#include "trendwalk/error.hpp"
#include "trendwalk/estimators.hpp"
#include "trendwalk/inference.hpp"
#include "trendwalk/io.hpp"
#include "trendwalk/walk.hpp"

namespace trendwalk {
namespace {

using nlohmann::json;

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> optional_from(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<T>();
}

// NaN is emitted as JSON null; read it back as NaN.
double number_or_nan(const json& v) {
  return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
}

std::size_t residual_zero_crossings(const SampleSeries& series, double slope) {
  const auto r = residuals(series, slope, 0.0);
  return count_interior_zeros(build_walk<double>(r));
}

}  // namespace

std::string_view to_string(ReportMethod m) {
  switch (m) {
    case ReportMethod::Dw:
      return "dw";
    case ReportMethod::Lls:
      return "lls";
    case ReportMethod::Both:
      return "both";
  }
  return "both";
}

ReportMethod parse_report_method(std::string_view s) {
  if (s == "dw") return ReportMethod::Dw;
  if (s == "lls") return ReportMethod::Lls;
  if (s == "both") return ReportMethod::Both;
  throw Error("unknown method '" + std::string(s) + "' (dw, lls, both)");
}

TrendReport make_trend_report(const SampleSeries& series, ReportMethod method) {
  TrendReport rep;
  rep.n = static_cast<std::int64_t>(series.size());
  rep.method = method;
  rep.equidistant = series.is_equidistant();
  if (method != ReportMethod::Lls && !rep.equidistant) throw NotEquidistant();

  const DataWalk walk = build_walk(series);
  rep.area = signed_area(walk);
  rep.reference_area = reference_area(rep.n).to_double();
  rep.zero_crossings_raw = static_cast<std::int64_t>(count_interior_zeros(walk));

  const FitResult lls = lls_slope_general(series);
  if (method == ReportMethod::Lls) {
    rep.slope = lls.slope;
    rep.intercept = lls.intercept;
    rep.ssr = lls.ssr;
  } else {
    const FitResult dw = fit_dw(series);
    rep.slope = dw.slope;
    rep.intercept = dw.intercept;
    rep.ssr = dw.ssr;
    if (method == ReportMethod::Both) {
      rep.slope_discrepancy = std::abs(dw.slope - lls.slope) / std::max(std::abs(lls.slope), 1.0);
    }
  }
  rep.zero_crossings_residual = static_cast<std::int64_t>(residual_zero_crossings(series, rep.slope));

  if (rep.n >= 3 && rep.equidistant) {
    const SignificanceReport sig = t_statistics(series);
    rep.sigma_noise = sig.sigma_noise;
    rep.sigma_area = sig.sigma_area;
    rep.t_area = sig.t_area;
    rep.t_ls = sig.t_ls;
    rep.perfect_fit = sig.perfect_fit;
    return rep;
  }

  // Two samples, or least squares on an irregular grid.
  double abs_sum = 0.0;
  for (double y : series.ys()) abs_sum += std::abs(y);
  rep.perfect_fit = std::sqrt(rep.ssr) <= 64.0 * std::numeric_limits<double>::epsilon() * abs_sum;
  if (rep.n >= 3) {
    rep.sigma_noise = estimate_sigma(lls.residuals, rep.n - 2);
    if (!rep.perfect_fit) {
      const double xbar = sum(series.xs()) / static_cast<double>(rep.n);
      std::vector<double> dx(series.size());
      for (std::size_t k = 0; k < dx.size(); ++k) dx[k] = series.xs()[k] - xbar;
      rep.t_ls = rep.slope / (rep.sigma_noise / std::sqrt(dot(dx, dx)));
    }
  } else {
    rep.sigma_noise = estimate_sigma(lls.residuals, 1);
  }
  return rep;
}

std::optional<double> significance_statistic(const TrendReport& r) {
  return r.t_area ? r.t_area : r.t_ls;
}

std::string format_text(const TrendReport& r) {
  std::ostringstream os;
  const auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string("n/a"); };
  os << "n                        " << r.n << '\n'
     << "method                   " << to_string(r.method) << '\n'
     << "equidistant              " << (r.equidistant ? "yes" : "no") << '\n'
     << "slope                    " << format_double(r.slope) << '\n'
     << "intercept                " << format_double(r.intercept) << '\n'
     << "area                     " << format_double(r.area) << '\n'
     << "reference_area           " << format_double(r.reference_area) << '\n'
     << "ssr                      " << format_double(r.ssr) << '\n'
     << "sigma_noise              " << format_double(r.sigma_noise) << '\n'
     << "sigma_area               " << opt(r.sigma_area) << '\n'
     << "t_area                   " << opt(r.t_area) << '\n'
     << "t_ls                     " << opt(r.t_ls) << '\n'
     << "zero_crossings_raw       " << r.zero_crossings_raw << '\n'
     << "zero_crossings_residual  " << r.zero_crossings_residual << '\n';
  if (r.slope_discrepancy) os << "slope_discrepancy        " << format_double(*r.slope_discrepancy) << '\n';
  if (r.perfect_fit) os << "perfect fit: residuals vanish, t statistics undefined\n";
  return os.str();
}

void to_json(json& j, const TrendReport& r) {
  j = json{
      {"n", r.n},
      {"method", to_string(r.method)},
      {"equidistant", r.equidistant},
      {"slope", r.slope},
      {"intercept", r.intercept},
      {"area", r.area},
      {"reference_area", r.reference_area},
      {"ssr", r.ssr},
      {"sigma_noise", r.sigma_noise},
      {"sigma_area", optional_json(r.sigma_area)},
      {"t_area", optional_json(r.t_area)},
      {"t_ls", optional_json(r.t_ls)},
      {"zero_crossings_raw", r.zero_crossings_raw},
      {"zero_crossings_residual", r.zero_crossings_residual},
      {"perfect_fit", r.perfect_fit},
      {"slope_discrepancy", optional_json(r.slope_discrepancy)},
  };
}

void from_json(const json& j, TrendReport& r) {
  r.n = j.at("n").get<std::int64_t>();
  r.method = parse_report_method(j.at("method").get<std::string>());
  r.equidistant = j.at("equidistant").get<bool>();
  r.slope = j.at("slope").get<double>();
  r.intercept = j.at("intercept").get<double>();
  r.area = j.at("area").get<double>();
  r.reference_area = j.at("reference_area").get<double>();
  r.ssr = j.at("ssr").get<double>();
  r.sigma_noise = j.at("sigma_noise").get<double>();
  r.sigma_area = optional_from<double>(j, "sigma_area");
  r.t_area = optional_from<double>(j, "t_area");
  r.t_ls = optional_from<double>(j, "t_ls");
  r.zero_crossings_raw = j.at("zero_crossings_raw").get<std::int64_t>();
  r.zero_crossings_residual = j.at("zero_crossings_residual").get<std::int64_t>();
  r.perfect_fit = j.at("perfect_fit").get<bool>();
  r.slope_discrepancy = optional_from<double>(j, "slope_discrepancy");
}

void to_json(json& j, const Histogram& h) {
  j = json{{"lo", h.lo}, {"width", h.width}, {"counts", h.counts}};
}

void from_json(const json& j, Histogram& h) {
  h.lo = j.at("lo").get<double>();
  h.width = j.at("width").get<double>();
  h.counts = j.at("counts").get<std::vector<std::uint64_t>>();
}

void to_json(json& j, const EnsembleSummary& s) {
  j = json{
      {"n", s.n},
      {"realizations", s.realizations},
      {"noise_variance", s.noise_variance},
      {"mean_area", s.mean_area},
      {"var_area", s.var_area},
      {"theory_var_area", s.theory_var_area},
      {"mean_slope", s.mean_slope},
      {"var_slope", s.var_slope},
      {"theory_var_slope", s.theory_var_slope},
      {"histogram", s.histogram},
      {"mean_zero_crossings", s.mean_zero_crossings},
      {"mode_zero_crossings", s.mode_zero_crossings},
      {"mean_zero_crossings_pinned", s.mean_zero_crossings_pinned},
      {"mode_zero_crossings_pinned", s.mode_zero_crossings_pinned},
      {"ks_statistic", s.ks_statistic},
  };
}

void from_json(const json& j, EnsembleSummary& s) {
  s.n = j.at("n").get<std::size_t>();
  s.realizations = j.at("realizations").get<std::size_t>();
  s.noise_variance = j.at("noise_variance").get<double>();
  s.mean_area = j.at("mean_area").get<double>();
  s.var_area = j.at("var_area").get<double>();
  s.theory_var_area = j.at("theory_var_area").get<double>();
  s.mean_slope = j.at("mean_slope").get<double>();
  s.var_slope = j.at("var_slope").get<double>();
  s.theory_var_slope = j.at("theory_var_slope").get<double>();
  s.histogram = j.at("histogram").get<Histogram>();
  s.mean_zero_crossings = j.at("mean_zero_crossings").get<double>();
  s.mode_zero_crossings = j.at("mode_zero_crossings").get<std::size_t>();
  s.mean_zero_crossings_pinned = j.at("mean_zero_crossings_pinned").get<double>();
  s.mode_zero_crossings_pinned = j.at("mode_zero_crossings_pinned").get<std::size_t>();
  s.ks_statistic = j.at("ks_statistic").get<double>();
}

namespace {

json numbers_or_null(const std::vector<double>& xs) {
  json a = json::array();
  for (double x : xs) a.push_back(std::isfinite(x) ? json(x) : json(nullptr));
  return a;
}

}  // namespace

void to_json(json& j, const IrregularComparison& c) {
  j = json{
      {"grid_kind", c.grid_kind},       {"n", c.n},
      {"realizations", c.realizations}, {"excluded", c.excluded},
      {"dw_ratio_slopes", numbers_or_null(c.dw_ratio_slopes)}, {"lls_slopes", numbers_or_null(c.lls_slopes)},
      {"max_rel_dev", c.max_rel_dev},   {"mean_rel_dev", c.mean_rel_dev},
  };
}

void from_json(const json& j, IrregularComparison& c) {
  c.grid_kind = j.at("grid_kind").get<std::string>();
  c.n = j.at("n").get<std::size_t>();
  c.realizations = j.at("realizations").get<std::size_t>();
  c.excluded = j.at("excluded").get<std::size_t>();
  c.dw_ratio_slopes.clear();
  c.lls_slopes.clear();
  for (const auto& v : j.at("dw_ratio_slopes")) c.dw_ratio_slopes.push_back(number_or_nan(v));
  for (const auto& v : j.at("lls_slopes")) c.lls_slopes.push_back(number_or_nan(v));
  c.max_rel_dev = j.at("max_rel_dev").get<double>();
  c.mean_rel_dev = j.at("mean_rel_dev").get<double>();
}

json envelope(std::string_view report_type, json payload) {
  return json{{"schema_version", kSchemaVersion},
              {"report_type", std::string(report_type)},
              {"payload", std::move(payload)}};
}

const json& open_envelope(const json& doc, std::string_view report_type) {
  if (doc.at("schema_version").get<int>() != kSchemaVersion) {
    throw Error("unsupported schema_version " + doc.at("schema_version").dump());
  }
  if (doc.at("report_type").get<std::string>() != report_type) {
    throw Error("expected report_type '" + std::string(report_type) + "', got " +
                doc.at("report_type").dump());
  }
  return doc.at("payload");
}

}  // namespace trendwalk
