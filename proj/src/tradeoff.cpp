#include "irtr/tradeoff.hpp"

#include <algorithm>
#include <cmath>

#include "irtr/errors.hpp"

namespace irtr {

namespace {

void require_coefficient(double c) {
  if (!(c >= 0.0 && c <= 1.0)) throw DomainError("incompatibility coefficient must lie in [0, 1]");
}

}  // namespace

double irtr_residual(const TradeoffPoint& p, double c_tilde) {
  require_coefficient(c_tilde);
  const double s = std::sqrt(1.0 - c_tilde * c_tilde);
  // Grouped so that nothing of order one cancels near the c = 1 endpoint.
  return (p.delta1 - c_tilde) * (p.delta1 + c_tilde) + p.delta2 * (p.delta2 + 2.0 * s * p.delta1);
}

std::vector<TradeoffPoint> irtr_frontier(double c_tilde, int n) {
  if (!(c_tilde > 0.0 && c_tilde <= 1.0))
    throw DomainError("frontier requires an incompatibility coefficient in (0, 1]");
  if (n < 2) throw DomainError("frontier needs at least two points");
  const double s = std::sqrt(1.0 - c_tilde * c_tilde);
  std::vector<TradeoffPoint> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double d1 = i == n - 1 ? c_tilde : c_tilde * i / (n - 1);
    const double d2 = c_tilde * std::sqrt(1.0 - d1 * d1) - d1 * s;
    out.push_back({d1, std::max(0.0, d2)});
  }
  return out;
}

double error_tradeoff_residual(const ErrorBudget& b, double c_tilde) {
  require_coefficient(c_tilde);
  if (b.nu == 0 || !(b.e11 > 0.0) || !(b.e22 > 0.0) || !(b.qf11 > 0.0) || !(b.qf22 > 0.0))
    throw DomainError("error budget entries must be positive");
  const double nu = static_cast<double>(b.nu);
  const double g1 = 1.0 / (nu * b.e11 * b.qf11);
  const double g2 = 1.0 / (nu * b.e22 * b.qf22);
  if (g1 > 1.0 + 1e-12 || g2 > 1.0 + 1e-12)
    throw InfeasibleBudgetError("error budget violates the scalar quantum Cramer-Rao bound");
  const double s = std::sqrt(1.0 - c_tilde * c_tilde);
  const double cross = std::sqrt(std::max(0.0, 1.0 - g1) * std::max(0.0, 1.0 - g2));
  return (2.0 - c_tilde * c_tilde) - (g1 + g2 - 2.0 * s * cross);
}

double small_separation_error_bound(std::uint64_t nu, double e11, double e22, double kappa) {
  if (nu == 0 || !(e11 > 0.0) || !(e22 > 0.0) || !(kappa > 0.0))
    throw DomainError("arguments must be positive");
  const double n = static_cast<double>(nu);
  return 1.0 - 1.0 / (4.0 * n * kappa * e11) - 1.0 / (n * kappa * e22);
}

}  // namespace irtr
