#include "irtr/quadrature.hpp"

#include <numbers>

namespace irtr {

GaussLegendreRule::GaussLegendreRule(int order) {
  if (order < 1) throw DomainError("Gauss-Legendre order must be positive");
  const int n = order;
  nodes_.assign(n, 0.0);
  weights_.assign(n, 0.0);
  // Roots are symmetric; solve for the upper half with Newton from the
  // Chebyshev-like initial guess and mirror.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double step = p0 / dp;
      z -= step;
      if (std::abs(step) < 1e-16) break;
    }
    // Recompute the derivative at the converged root for the weight.
    double p0 = 1.0;
    double p1 = 0.0;
    for (int j = 0; j < n; ++j) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
    }
    dp = n * (z * p0 - p1) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    nodes_[i] = -z;
    nodes_[n - 1 - i] = z;
    weights_[i] = w;
    weights_[n - 1 - i] = w;
  }
  if (n % 2 == 1) nodes_[n / 2] = 0.0;
}

QuadratureGrid composite_grid(const GaussLegendreRule& rule, double a, double b, int panels) {
  if (!(b > a)) throw DomainError("quadrature interval must satisfy b > a");
  if (panels < 1) throw DomainError("panel count must be positive");
  QuadratureGrid grid;
  grid.x.reserve(static_cast<std::size_t>(panels) * rule.order());
  grid.w.reserve(grid.x.capacity());
  const double width = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * width;
    const double half = 0.5 * width;
    for (int k = 0; k < rule.order(); ++k) {
      grid.x.push_back(mid + half * rule.nodes()[k]);
      grid.w.push_back(half * rule.weights()[k]);
    }
  }
  return grid;
}

}  // namespace irtr
