#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "trendwalk/error.hpp"
#include "trendwalk/walk.hpp"

using namespace trendwalk;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::vector<double> random_ys(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> offset(-50.0, 50.0);
  const double c = offset(rng);
  std::vector<double> ys(n);
  for (auto& y : ys) y = c + 3.0 * g(rng);
  return ys;
}

double abs_sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

}  // namespace

TEST(BuildWalk, ConstantSeriesGivesZeroWalk) {
  for (double c : {0.0, 1.0, -3.25, 1e6, 0.1}) {
    const std::vector<double> ys(17, c);
    const DataWalk w = build_walk<double>(ys);
    for (double z : w.positions) EXPECT_EQ(z, 0.0) << "c=" << c;
  }
}

TEST(BuildWalk, ThreePointRamp) {
  const std::vector<double> ys{0.0, 0.5, 1.0};
  const DataWalk w = build_walk<double>(ys);
  EXPECT_EQ(w.mean_removed, 0.5);
  EXPECT_EQ(w.steps, (std::vector<double>{-0.5, 0.0, 0.5}));
  EXPECT_EQ(w.positions, (std::vector<double>{0.0, -0.5, -0.5, 0.0}));
}

TEST(BuildWalk, RejectsShortInput) {
  const std::vector<double> one{1.0};
  EXPECT_THROW(build_walk<double>(one), InvalidSeries);
}

TEST(BuildWalk, InvariantsHoldOnRandomInput) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 300)(rng);
    const auto ys = random_ys(rng, n);
    const DataWalk w = build_walk<double>(ys);
    ASSERT_EQ(w.positions.size(), n + 1);
    ASSERT_EQ(w.positions[0], 0.0);
    ASSERT_LE(std::abs(w.positions[n]), 64.0 * kEps * abs_sum(ys));
    double step_total = 0.0;
    for (std::size_t j = 1; j <= n; ++j) {
      const double gap = w.positions[j] - w.positions[j - 1];
      ASSERT_NEAR(gap, w.steps[j - 1], 8.0 * kEps * (std::abs(w.positions[j]) + std::abs(w.steps[j - 1]) + 1.0));
      step_total += w.steps[j - 1];
    }
    ASSERT_NEAR(step_total, w.positions[n], 64.0 * kEps * abs_sum(ys));
  }
}

TEST(BuildWalk, ShiftInvariance) {
  // Unit-scale data and shifts: positions agree to 1e-12 absolute.
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> shift(-1.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 200)(rng);
    std::vector<double> ys(n);
    for (auto& y : ys) y = g(rng);
    const double c = shift(rng);
    std::vector<double> shifted(ys);
    for (auto& y : shifted) y += c;
    const DataWalk a = build_walk<double>(ys);
    const DataWalk b = build_walk<double>(shifted);
    for (std::size_t j = 0; j <= n; ++j) ASSERT_NEAR(a.positions[j], b.positions[j], 1e-12) << "n=" << n;
  }
}

TEST(BuildWalk, ScaleEquivariance) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> scale(-20.0, 20.0);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 200)(rng);
    const auto ys = random_ys(rng, n);
    const double c = scale(rng);
    std::vector<double> scaled(ys);
    for (auto& y : scaled) y *= c;
    const DataWalk a = build_walk<double>(ys);
    const DataWalk b = build_walk<double>(scaled);
    double norm = 0.0;
    for (double z : a.positions) norm = std::max(norm, std::abs(z));
    for (std::size_t j = 0; j <= n; ++j) {
      ASSERT_NEAR(b.positions[j], c * a.positions[j], 1e-12 * std::abs(c) * (norm + abs_sum(ys) * 1e-2));
    }
  }
}

TEST(BuildWalk, PowerOfTwoScalingIsExact) {
  std::mt19937_64 rng(4);
  const auto ys = random_ys(rng, 41);
  std::vector<double> scaled(ys);
  for (auto& y : scaled) y *= 4.0;
  const DataWalk a = build_walk<double>(ys);
  const DataWalk b = build_walk<double>(scaled);
  for (std::size_t j = 0; j < a.positions.size(); ++j) EXPECT_EQ(b.positions[j], 4.0 * a.positions[j]);
}

TEST(BuildWalk, ExactBackendPinsExactly) {
  std::vector<Rational> ys{Rational(1, 3), Rational(-7, 5), Rational(2), Rational(9, 11)};
  const ExactWalk w = build_walk<Rational>(ys);
  EXPECT_EQ(w.positions.front(), 0);
  EXPECT_EQ(w.positions.back(), 0);
}

TEST(SignedArea, Examples) {
  const std::vector<double> c(9, 2.5);
  EXPECT_EQ(signed_area(build_walk<double>(c)), 0.0);
  const std::vector<double> ramp{0.0, 0.5, 1.0};
  EXPECT_EQ(signed_area(build_walk<double>(ramp)), 1.0);
  EXPECT_EQ(signed_area(build_walk<double>(ramp)), reference_area(3).to_double());
}

TEST(SignedArea, Additivity) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 200)(rng);
    const auto a = random_ys(rng, n);
    const auto b = random_ys(rng, n);
    std::vector<double> s(n);
    for (std::size_t k = 0; k < n; ++k) s[k] = a[k] + b[k];
    const double aa = signed_area(build_walk<double>(a));
    const double ab = signed_area(build_walk<double>(b));
    const double as = signed_area(build_walk<double>(s));
    // Relative to the area scale of the inputs: sum_k |y_k - ybar| * |x~_k|.
    const double scale = (abs_sum(a) + abs_sum(b)) * static_cast<double>(n);
    ASSERT_NEAR(as, aa + ab, 1e-12 * scale) << "n=" << n;
  }
}

TEST(ReferenceArea, Examples) {
  EXPECT_EQ(reference_area(24), (Fraction{50, 1}));
  EXPECT_EQ(reference_area(3), (Fraction{1, 1}));
  EXPECT_EQ(reference_area(2), (Fraction{1, 2}));
  // n = 2 cross-check: brute-force area of ys = (0, 1).
  const std::vector<double> ys{0.0, 1.0};
  EXPECT_EQ(signed_area(build_walk<double>(ys)), 0.5);
}

TEST(ReferenceArea, ErrorsAndOverflow) {
  EXPECT_THROW(reference_area(1), InvalidSeries);
  EXPECT_THROW(reference_area(std::numeric_limits<std::int64_t>::max() / 2), Overflow);
  EXPECT_NO_THROW(reference_area(3'000'000'000LL));
}

TEST(ReferenceArea, MatchesParabolaExactlyForAllN) {
  for (std::int64_t n = 2; n <= 500; ++n) {
    const auto z = reference_parabola<Rational>(n);
    Rational total = 0;
    for (const auto& v : z) total += v;
    ASSERT_EQ(-total, reference_area(n).to_rational()) << "n=" << n;
    ASSERT_EQ(z.back(), 0) << "n=" << n;
  }
}

TEST(ReferenceParabola, Examples) {
  EXPECT_EQ(reference_parabola<double>(3), (std::vector<double>{-0.5, -0.5, 0.0}));
  const auto z24 = reference_parabola<double>(24);
  double total = 0.0;
  for (double v : z24) total += v;
  EXPECT_NEAR(-total, 50.0, 1e-12);
  EXPECT_EQ(z24.back(), 0.0);
  for (std::int64_t n = 2; n <= 300; ++n) ASSERT_EQ(reference_parabola<double>(n).back(), 0.0);
}

TEST(ReferenceParabola, MatchesWalkOfExactRamp) {
  for (std::int64_t n = 2; n <= 60; ++n) {
    std::vector<Rational> ramp(static_cast<std::size_t>(n));
    for (std::int64_t k = 0; k < n; ++k) ramp[static_cast<std::size_t>(k)] = Rational(k, n - 1);
    const ExactWalk w = build_walk<Rational>(ramp);
    const auto z = reference_parabola<Rational>(n);
    for (std::int64_t j = 1; j <= n; ++j) {
      ASSERT_EQ(w.positions[static_cast<std::size_t>(j)], z[static_cast<std::size_t>(j - 1)]);
    }
  }
}

TEST(ReferenceParabola, MinimumNearMiddle) {
  // Enumeration: the parabola j(j - n) / (2(n - 1)) is smallest at j = n/2.
  for (std::int64_t n = 2; n <= 400; ++n) {
    const auto z = reference_parabola<double>(n);
    const auto it = std::min_element(z.begin(), z.end());
    const double argmin = static_cast<double>(it - z.begin() + 1);
    ASSERT_LE(std::abs(argmin - static_cast<double>(n) / 2.0), 0.5 + 1e-12) << "n=" << n;
  }
}

TEST(InteriorZeros, RampHasNone) {
  for (std::size_t n = 2; n <= 100; ++n) {
    std::vector<double> ys(n);
    for (std::size_t k = 0; k < n; ++k) ys[k] = static_cast<double>(k) / static_cast<double>(n - 1);
    ASSERT_EQ(count_interior_zeros(build_walk<double>(ys)), 0u) << "n=" << n;
  }
}

TEST(InteriorZeros, TieConvention) {
  const auto count = [](std::vector<double> v) { return count_sign_changes<double>(v); };
  EXPECT_EQ(count({1.0, -1.0}), 1u);
  EXPECT_EQ(count({1.0, 0.0, -1.0}), 1u);       // crossing through an exact zero
  EXPECT_EQ(count({1.0, 0.0, 1.0}), 1u);        // touch counts as a zero
  EXPECT_EQ(count({1.0, 0.0, 0.0, -1.0}), 1u);  // zero run counts once
  EXPECT_EQ(count({0.0, 1.0, -1.0, 0.0}), 3u);
  EXPECT_EQ(count({2.0, 3.0, 1.0}), 0u);
  EXPECT_EQ(count({}), 0u);
}

TEST(InteriorZeros, EndpointsExcluded) {
  // positions (0, -1, 1, 0): one interior crossing; z_0 and z_N do not count.
  DataWalk w;
  w.steps = {-1.0, 2.0, -1.0};
  w.positions = {0.0, -1.0, 1.0, 0.0};
  EXPECT_EQ(count_interior_zeros(w), 1u);
  // A float-noise end position must not create a crossing.
  w.positions = {0.0, -1.0, -2.0, 1e-17};
  EXPECT_EQ(count_interior_zeros(w), 0u);
}
