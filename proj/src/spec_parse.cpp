#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "trendwalk/error.hpp"
#include "trendwalk/io.hpp"

namespace trendwalk {
namespace {

// Cursor over a spec string; every failure reports its byte offset.
class SpecReader {
 public:
  explicit SpecReader(std::string_view s) : s_(s) {}

  std::string_view family() {
    const auto colon = s_.find(':');
    const std::string_view f = s_.substr(0, colon);
    pos_ = colon == std::string_view::npos ? s_.size() : colon + 1;
    has_args_ = colon != std::string_view::npos;
    return f;
  }

  bool has_args() const { return has_args_; }
  bool done() const { return pos_ >= s_.size(); }
  std::size_t pos() const { return pos_; }

  double number(const char* what) {
    const char* begin = s_.data() + pos_;
    const char* end = s_.data() + s_.size();
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || !std::isfinite(v)) fail(std::string("expected ") + what);
    pos_ += static_cast<std::size_t>(ptr - begin);
    return v;
  }

  void expect(char c) {
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool accept(char c) {
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void finish() {
    if (!done()) fail("unexpected trailing characters");
  }

  [[noreturn]] void fail(const std::string& what) const { fail_at(pos_, what); }
  [[noreturn]] void fail_at(std::size_t at, const std::string& what) const {
    throw SpecError(std::string(s_), at, what);
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
  bool has_args_ = false;
};

std::pair<double, double> two_numbers(SpecReader& r, const char* first, const char* second) {
  const double a = r.number(first);
  r.expect(',');
  const double b = r.number(second);
  r.finish();
  return {a, b};
}

template <class Validate>
void validated(SpecReader& r, std::size_t at, Validate&& v) {
  try {
    v();
  } catch (const std::invalid_argument& e) {
    r.fail_at(at, e.what());
  }
}

}  // namespace

NoiseSpec parse_noise(std::string_view spec, std::uint64_t seed) {
  SpecReader r(spec);
  const std::string_view family = r.family();
  const std::size_t args_at = r.pos();
  NoiseSpec out;
  out.seed = seed;
  if (family == "gaussian" || family == "beta" || family == "uniform") {
    if (!r.has_args()) r.fail("missing ':' and parameters");
    if (family == "gaussian") {
      const auto [m, v] = two_numbers(r, "mean", "variance");
      out.family = GaussianNoise{m, v};
    } else if (family == "beta") {
      const auto [a, b] = two_numbers(r, "alpha", "beta");
      out.family = BetaNoise{a, b};
    } else {
      const auto [lo, hi] = two_numbers(r, "lo", "hi");
      out.family = UniformNoise{lo, hi};
    }
  } else if (family == "discrete") {
    if (!r.has_args()) r.fail("missing ':' and value=weight pairs");
    DiscreteNoise d;
    do {
      d.values.push_back(r.number("value"));
      r.expect('=');
      d.weights.push_back(r.number("weight"));
    } while (r.accept(','));
    r.finish();
    out.family = std::move(d);
  } else {
    r.fail_at(0, "unknown noise family '" + std::string(family) +
                     "' (gaussian, beta, uniform, discrete)");
  }
  validated(r, args_at, [&] { out.validate(); });
  return out;
}

GridSpec parse_grid(std::string_view spec, std::size_t n, std::uint64_t seed) {
  SpecReader r(spec);
  const std::string_view kind = r.family();
  const std::size_t args_at = r.pos();
  GridSpec out;
  out.n = n;
  if (kind == "unit") {
    if (r.has_args()) r.fail("'unit' takes no parameters");
    out.kind = UnitGrid{};
  } else if (kind == "poisson") {
    if (!r.has_args()) r.fail("missing ':' and rate");
    const double rate = r.number("rate");
    r.finish();
    out.kind = PoissonGrid{rate, seed};
  } else if (kind == "equidistant") {
    if (!r.has_args()) r.fail("missing ':' and x0,span");
    const auto [x0, span] = two_numbers(r, "x0", "span");
    out.kind = EquidistantGrid{x0, span};
  } else {
    r.fail_at(0, "unknown grid '" + std::string(kind) + "' (unit, equidistant, poisson)");
  }
  validated(r, args_at, [&] { out.validate(); });
  return out;
}

}  // namespace trendwalk
