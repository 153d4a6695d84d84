#pragma once

// Error-free transformations shared by the scalar kernels and the lane
// reductions of the vector kernels.

#include <cmath>

namespace trendwalk::simd::eft {

// s + e == a + b exactly, s = fl(a + b).
inline void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  const double bp = s - a;
  e = (a - (s - bp)) + (b - bp);
}

// p + e == a * b exactly, p = fl(a * b).
inline void two_prod(double a, double b, double& p, double& e) {
  p = a * b;
  e = std::fma(a, b, -p);
}

struct Accumulator {
  double s = 0.0;
  double c = 0.0;

  void add(double x) {
    double e;
    two_sum(s, x, s, e);
    c += e;
  }
  double value() const { return s + c; }
};

}  // namespace trendwalk::simd::eft
