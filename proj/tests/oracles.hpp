#pragma once

// Reference computations used only by the tests. They deliberately avoid the
// library's Gauss-Legendre machinery.

#include <cmath>
#include <functional>

namespace irtr::testing {

/// Composite trapezoid rule; spectrally accurate for smooth integrands that
/// decay to zero at both ends of [a, b].
inline double trapezoid(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = 0.5 * (f(a) + f(b));
  for (int i = 1; i < n; ++i) s += f(a + i * h);
  return s * h;
}

/// Root of g on [lo, hi] by bisection; g(lo) and g(hi) must differ in sign.
inline double bisect(const std::function<double(double)>& g, double lo, double hi,
                     int iterations = 200) {
  double glo = g(lo);
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if ((gm <= 0.0) == (glo <= 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

inline double gaussian_psf(double sigma, double x) {
  return std::pow(2.0 * M_PI * sigma * sigma, -0.25) * std::exp(-x * x / (4.0 * sigma * sigma));
}

inline double gaussian_psf_derivative(double sigma, double x) {
  return -x / (2.0 * sigma * sigma) * gaussian_psf(sigma, x);
}

}  // namespace irtr::testing
