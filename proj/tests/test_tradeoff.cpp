#include <doctest.h>

#include <cmath>

#include "irtr/errors.hpp"
#include "irtr/tradeoff.hpp"
#include "oracles.hpp"

using namespace irtr;

TEST_CASE("IRTR residual") {
  CHECK(irtr_residual({0.0, 0.0}, 0.5) == doctest::Approx(-0.25));
  CHECK(irtr_residual({0.5, 0.0}, 0.5) == doctest::Approx(0.0));
  CHECK(irtr_residual({0.0, 0.5}, 0.5) == doctest::Approx(0.0));
  CHECK(irtr_residual({0.3, 0.4}, 1.0) == doctest::Approx(0.25 - 1.0));
  CHECK(irtr_residual({0.3, 0.4}, 0.0) == doctest::Approx(0.09 + 0.16 + 2 * 0.12));
  CHECK_THROWS_AS(irtr_residual({0.1, 0.1}, 1.5), DomainError);
  CHECK_THROWS_AS(irtr_residual({0.1, 0.1}, -0.1), DomainError);
}

TEST_CASE("frontier endpoints and the fully incompatible circle") {
  for (double c : {0.01, 0.3, 0.43, 0.9, 1.0}) {
    const auto f = irtr_frontier(c, 101);
    REQUIRE(f.size() == 101);
    CHECK(f.front().delta1 == 0.0);
    CHECK(f.front().delta2 == doctest::Approx(c).epsilon(1e-15));
    CHECK(f.back().delta1 == c);
    CHECK(f.back().delta2 < 1e-15);
    for (const auto& p : f) CHECK(std::abs(irtr_residual(p, c)) < 1e-14);
  }
  for (const auto& p : irtr_frontier(1.0, 64))
    CHECK(p.delta1 * p.delta1 + p.delta2 * p.delta2 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(irtr_frontier(0.0, 10), DomainError);
  CHECK_THROWS_AS(irtr_frontier(1.1, 10), DomainError);
  CHECK_THROWS_AS(irtr_frontier(0.5, 1), DomainError);
}

TEST_CASE("frontier agrees with a bisection root of the residual") {
  for (double c : {0.05, 0.43, 0.77}) {
    for (const auto& p : irtr_frontier(c, 33)) {
      const double root = testing::bisect([&](double d2) { return irtr_residual({p.delta1, d2}, c); }, 0.0, 1.0);
      CHECK(std::abs(root - p.delta2) < 1e-10);
    }
  }
}

TEST_CASE("frontier is decreasing and nested in c") {
  const auto f = irtr_frontier(0.6, 257);
  for (std::size_t i = 1; i < f.size(); ++i) {
    CHECK(f[i].delta1 > f[i - 1].delta1);
    CHECK(f[i].delta2 <= f[i - 1].delta2);
  }
  // A weaker coefficient admits every point admitted by a stronger one.
  for (const auto& p : f) {
    CHECK(irtr_residual(p, 0.3) >= -1e-15);
    CHECK(irtr_residual(p, 0.6) >= -1e-14);
  }
  // Residual grows when either regret grows.
  for (double c : {0.2, 0.8})
    for (double d1 = 0.0; d1 < 1.0; d1 += 0.1)
      for (double d2 = 0.0; d2 < 1.0; d2 += 0.1) {
        CHECK(irtr_residual({d1 + 0.01, d2}, c) > irtr_residual({d1, d2}, c));
        CHECK(irtr_residual({d1, d2 + 0.01}, c) > irtr_residual({d1, d2}, c));
      }
}

TEST_CASE("error tradeoff") {
  // Both errors at the scalar bound: feasible only without incompatibility.
  ErrorBudget tight{1, 1.0, 1.0, 1.0, 1.0};
  CHECK(error_tradeoff_residual(tight, 0.0) == doctest::Approx(0.0));
  CHECK(error_tradeoff_residual(tight, 0.5) == doctest::Approx(-0.25));

  // Twice the scalar bound in both parameters.
  ErrorBudget loose{10, 0.2, 0.2, 1.0, 1.0};
  const double c = 0.6;
  const double expected = (2.0 - c * c) - (0.5 + 0.5 - 2.0 * 0.8 * 0.5);
  CHECK(error_tradeoff_residual(loose, c) == doctest::Approx(expected));

  // The error residual vanishes where the information regrets sit on the frontier.
  for (const auto& p : irtr_frontier(c, 17)) {
    const double g1 = 1.0 - p.delta1 * p.delta1;
    const double g2 = 1.0 - p.delta2 * p.delta2;
    ErrorBudget b{1, 1.0 / g1, 1.0 / g2, 1.0, 1.0};
    CHECK(std::abs(error_tradeoff_residual(b, c)) < 1e-12);
  }

  ErrorBudget infeasible{1, 0.5, 2.0, 1.0, 1.0};
  CHECK_THROWS_AS(error_tradeoff_residual(infeasible, 0.3), InfeasibleBudgetError);
  ErrorBudget zero{0, 1.0, 1.0, 1.0, 1.0};
  CHECK_THROWS_AS(error_tradeoff_residual(zero, 0.3), DomainError);
}

TEST_CASE("small-separation error bound") {
  const double kappa = 0.25;
  CHECK(small_separation_error_bound(1, 1.0, 4.0, kappa) == doctest::Approx(1.0 - 1.0 - 1.0));
  CHECK(small_separation_error_bound(100, 1.0, 1.0, kappa) == doctest::Approx(1.0 - 0.01 - 0.04));
  // It coincides with the general error residual at c = 1, Q = diag(4 kappa, kappa).
  ErrorBudget b{50, 0.3, 0.9, 4.0 * kappa, kappa};
  CHECK(small_separation_error_bound(50, 0.3, 0.9, kappa) ==
        doctest::Approx(error_tradeoff_residual(b, 1.0)));
  CHECK_THROWS_AS(small_separation_error_bound(1, 1.0, 0.0, kappa), DomainError);
}
