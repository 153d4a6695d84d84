#pragma once

// File ingestion, report records, JSON envelopes and CLI spec strings.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "trendwalk/ensemble.hpp"
#include "trendwalk/series.hpp"
#include "trendwalk/synth.hpp"

namespace trendwalk {

inline constexpr int kSchemaVersion = 1;

// CSV with header "x,y", one sample per row, rows in any order, LF or CRLF.
// Rows are sorted by x; duplicate x, malformed rows, non-finite values and
// fewer than two rows raise ParseError naming the offending line.
SampleSeries read_series(std::istream& in);
SampleSeries read_series(const std::filesystem::path& path);

enum class ReportMethod { Dw, Lls, Both };

std::string_view to_string(ReportMethod m);
ReportMethod parse_report_method(std::string_view s);

struct TrendReport {
  std::int64_t n = 0;
  ReportMethod method = ReportMethod::Both;
  bool equidistant = true;
  double slope = 0.0;
  double intercept = 0.0;
  double area = 0.0;
  double reference_area = 0.0;
  double ssr = 0.0;
  double sigma_noise = 0.0;
  std::optional<double> sigma_area;
  std::optional<double> t_area;
  std::optional<double> t_ls;
  std::int64_t zero_crossings_raw = 0;
  std::int64_t zero_crossings_residual = 0;
  bool perfect_fit = false;
  // --method both: |dw - lls| / max(|lls|, 1)
  std::optional<double> slope_discrepancy;

  friend bool operator==(const TrendReport&, const TrendReport&) = default;
};

// Throws NotEquidistant when the data-walk route is requested on an
// irregular grid.
TrendReport make_trend_report(const SampleSeries& series, ReportMethod method);

// Statistic compared against a user confidence threshold: t_area when it
// exists, t_ls otherwise.
std::optional<double> significance_statistic(const TrendReport& r);

std::string format_text(const TrendReport& r);

void to_json(nlohmann::json& j, const TrendReport& r);
void from_json(const nlohmann::json& j, TrendReport& r);
void to_json(nlohmann::json& j, const Histogram& h);
void from_json(const nlohmann::json& j, Histogram& h);
void to_json(nlohmann::json& j, const EnsembleSummary& s);
void from_json(const nlohmann::json& j, EnsembleSummary& s);
void to_json(nlohmann::json& j, const IrregularComparison& c);
void from_json(const nlohmann::json& j, IrregularComparison& c);

// {"schema_version": 1, "report_type": type, "payload": payload}
nlohmann::json envelope(std::string_view report_type, nlohmann::json payload);

// Checks schema_version and report_type; returns the payload.
const nlohmann::json& open_envelope(const nlohmann::json& doc, std::string_view report_type);

// Walk positions as CSV "j,z" (j = 0..n), optionally with a third column.
void write_walk_csv(std::ostream& out, std::span<const double> positions,
                    std::optional<std::span<const double>> reference = {});

void write_series_csv(std::ostream& out, const SampleSeries& series);

// Shortest decimal that round-trips.
std::string format_double(double v);

// "gaussian:m,v" | "beta:a,b" | "uniform:lo,hi" | "discrete:v=w,v=w,..."
NoiseSpec parse_noise(std::string_view spec, std::uint64_t seed);

// "unit" | "equidistant:x0,span" | "poisson:rate"
GridSpec parse_grid(std::string_view spec, std::size_t n, std::uint64_t seed);

}  // namespace trendwalk
