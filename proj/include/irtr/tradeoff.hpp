#pragma once

#include <cstdint>
#include <vector>

namespace irtr {

/// Pair of normalized square-root information regrets, each in [0, 1].
struct TradeoffPoint {
  double delta1 = 0.0;
  double delta2 = 0.0;
};

/// Error-covariance diagonals after `nu` repetitions, with the matching QFIM
/// diagonals.
struct ErrorBudget {
  std::uint64_t nu = 1;
  double e11 = 0.0;
  double e22 = 0.0;
  double qf11 = 0.0;
  double qf22 = 0.0;
};

// All residuals below follow one sign convention: nonnegative means feasible.

/// D1^2 + D2^2 + 2 sqrt(1 - c^2) D1 D2 - c^2
double irtr_residual(const TradeoffPoint& p, double c_tilde);

/// `n` boundary points with D1 uniform on [0, c] and
/// D2 = c sqrt(1 - D1^2) - D1 sqrt(1 - c^2).
std::vector<TradeoffPoint> irtr_frontier(double c_tilde, int n);

/// (2 - c^2) - [g1 + g2 - 2 sqrt(1 - c^2) sqrt((1 - g1)(1 - g2))] with
/// g_j = 1 / (nu e_jj qf_jj). Throws InfeasibleBudgetError if some g_j
/// exceeds 1 (the scalar Cramer-Rao bound is violated).
double error_tradeoff_residual(const ErrorBudget& budget, double c_tilde);

/// 1 - 1/(4 nu kappa e11) - 1/(nu kappa e22): the error tradeoff in the
/// vanishing-separation limit.
double small_separation_error_bound(std::uint64_t nu, double e11, double e22, double kappa);

}  // namespace irtr
