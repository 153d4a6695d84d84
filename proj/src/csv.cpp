#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "trendwalk/error.hpp"
#include "trendwalk/io.hpp"

namespace trendwalk {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

double parse_field(std::string_view field, std::size_t line, const char* name) {
  const std::string_view f = trim(field);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
  if (f.empty() || ec != std::errc() || ptr != f.data() + f.size()) {
    throw ParseError(line, std::string("malformed ") + name + " value '" + std::string(f) + "'");
  }
  if (!std::isfinite(v)) {
    throw ParseError(line, std::string("non-finite ") + name + " value '" + std::string(f) + "'");
  }
  return v;
}

struct Row {
  double x;
  double y;
  std::size_t line;
};

}  // namespace

SampleSeries read_series(std::istream& in) {
  std::string raw;
  std::size_t line = 0;
  bool header_seen = false;
  std::vector<Row> rows;

  while (std::getline(in, raw)) {
    ++line;
    std::string_view text(raw);
    if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
    if (line == 1 && text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
    if (trim(text).empty()) continue;

    if (!header_seen) {
      const auto comma = text.find(',');
      if (comma == std::string_view::npos || trim(text.substr(0, comma)) != "x" ||
          trim(text.substr(comma + 1)) != "y") {
        throw ParseError(line, "expected header 'x,y'");
      }
      header_seen = true;
      continue;
    }

    const auto comma = text.find(',');
    if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos) {
      throw ParseError(line, "expected exactly two fields 'x,y'");
    }
    rows.push_back({parse_field(text.substr(0, comma), line, "x"),
                    parse_field(text.substr(comma + 1), line, "y"), line});
  }

  if (!header_seen) throw ParseError(std::max<std::size_t>(line, 1), "empty input, expected header 'x,y'");
  if (rows.size() < 2) {
    throw ParseError(line, "need at least 2 data rows, found " + std::to_string(rows.size()));
  }

  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.x < b.x; });
  for (std::size_t k = 1; k < rows.size(); ++k) {
    if (rows[k].x == rows[k - 1].x) {
      const auto [first, second] = std::minmax(rows[k - 1].line, rows[k].line);
      throw ParseError(second, "duplicate x value (also on line " + std::to_string(first) + ")");
    }
  }

  std::vector<double> xs, ys;
  xs.reserve(rows.size());
  ys.reserve(rows.size());
  for (const Row& r : rows) {
    xs.push_back(r.x);
    ys.push_back(r.y);
  }
  return SampleSeries(std::move(xs), std::move(ys));
}

SampleSeries read_series(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return read_series(in);
}

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void write_walk_csv(std::ostream& out, std::span<const double> positions,
                    std::optional<std::span<const double>> reference) {
  out << (reference ? "j,z,reference\n" : "j,z\n");
  for (std::size_t j = 0; j < positions.size(); ++j) {
    out << j << ',' << format_double(positions[j]);
    if (reference) out << ',' << format_double((*reference)[j]);
    out << '\n';
  }
}

void write_series_csv(std::ostream& out, const SampleSeries& series) {
  out << "x,y\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    out << format_double(series.xs()[k]) << ',' << format_double(series.ys()[k]) << '\n';
  }
}

}  // namespace trendwalk
