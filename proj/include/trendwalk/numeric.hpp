#pragma once

// Arithmetic backends. Estimators are templates over the scalar type and are
// instantiated for double (compensated kernels) and Rational (exact).

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <span>

namespace trendwalk {

using Rational = boost::multiprecision::cpp_rational;

// Small exact fraction, used where the value must stay integral-exact and
// overflow has to be reported rather than silently widened.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  Rational to_rational() const { return Rational(num, den); }

  template <class T>
  T as() const {
    if constexpr (std::is_same_v<T, Rational>) {
      return to_rational();
    } else {
      return to_double();
    }
  }

  friend bool operator==(const Fraction&, const Fraction&) = default;
};

double sum(std::span<const double> xs);
Rational sum(std::span<const Rational> xs);

double dot(std::span<const double> a, std::span<const double> b);
Rational dot(std::span<const Rational> a, std::span<const Rational> b);

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.convert_to<double>(); }

}  // namespace trendwalk
