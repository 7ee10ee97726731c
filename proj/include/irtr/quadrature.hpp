#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "irtr/errors.hpp"

namespace irtr {

/// Gauss-Legendre nodes and weights on [-1, 1].
class GaussLegendreRule {
 public:
  explicit GaussLegendreRule(int order);

  int order() const { return static_cast<int>(nodes_.size()); }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// Flattened nodes and weights of a composite rule over [a, b].
struct QuadratureGrid {
  std::vector<double> x;
  std::vector<double> w;

  std::size_t size() const { return x.size(); }
};

QuadratureGrid composite_grid(const GaussLegendreRule& rule, double a, double b, int panels);

/// Integrates the N-component integrand `f` over [a, b] with a composite
/// Gauss-Legendre rule. The panel count is doubled until two consecutive
/// estimates agree componentwise to `abs_tolerance`; the finer estimate is
/// returned.
template <std::size_t N, class Integrand>
std::array<double, N> integrate_refined(Integrand&& f, double a, double b, int initial_panels,
                                        const GaussLegendreRule& rule, double abs_tolerance,
                                        int max_doublings = 10) {
  auto estimate = [&](int panels) {
    std::array<double, N> sum{};
    const double width = (b - a) / panels;
    const auto& t = rule.nodes();
    const auto& wt = rule.weights();
    for (int p = 0; p < panels; ++p) {
      const double mid = a + (p + 0.5) * width;
      const double half = 0.5 * width;
      std::array<double, N> panel_sum{};
      for (std::size_t k = 0; k < t.size(); ++k) {
        const std::array<double, N> v = f(mid + half * t[k]);
        for (std::size_t i = 0; i < N; ++i) panel_sum[i] += wt[k] * v[i];
      }
      for (std::size_t i = 0; i < N; ++i) sum[i] += half * panel_sum[i];
    }
    return sum;
  };

  int panels = initial_panels < 1 ? 1 : initial_panels;
  std::array<double, N> coarse = estimate(panels);
  for (int d = 0; d < max_doublings; ++d) {
    panels *= 2;
    std::array<double, N> fine = estimate(panels);
    double diff = 0.0;
    for (std::size_t i = 0; i < N; ++i) diff = std::max(diff, std::abs(fine[i] - coarse[i]));
    if (diff <= abs_tolerance) return fine;
    coarse = fine;
  }
  throw ConvergenceError("composite Gauss-Legendre did not reach tolerance " +
                         std::to_string(abs_tolerance) + " after " + std::to_string(max_doublings) +
                         " panel doublings");
}

}  // namespace irtr
