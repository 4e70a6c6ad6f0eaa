#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "transineq/measure/quadrature.hpp"
#include "transineq/measure/roots.hpp"
#include "unit/gen.hpp"

namespace quad = transineq::quad;

TEST(Quadrature, RuleIsSymmetricAndSumsToTwo) {
  for (int n : {1, 2, 5, 20, 40}) {
    const auto& rule = quad::gauss_legendre(n);
    ASSERT_EQ(rule.nodes.size(), static_cast<std::size_t>(n));
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      sum += rule.weights[i];
      EXPECT_NEAR(rule.nodes[i], -rule.nodes[n - 1 - i], 1e-15);
    }
    EXPECT_NEAR(sum, 2.0, 1e-14);
  }
}

// An n-point rule integrates random polynomials of degree 2n - 1 exactly.
TEST(QuadratureProperty, PolynomialExactness) {
  gen::Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = rng.integer(1, 20);
    const int deg = 2 * n - 1;
    std::vector<double> c(deg + 1);
    for (double& v : c) v = rng.uniform(-1.0, 1.0);
    const double a = rng.uniform(-2.0, 0.0), b = a + rng.uniform(0.1, 2.0);
    auto poly = [&](double x) {
      double s = 0.0;
      for (int k = deg; k >= 0; --k) s = s * x + c[k];
      return s;
    };
    double exact = 0.0, scale = 0.0;
    for (int k = 0; k <= deg; ++k) {
      const double term = c[k] * (std::pow(b, k + 1) - std::pow(a, k + 1)) / (k + 1);
      exact += term;
      scale += std::abs(term);
    }
    EXPECT_NEAR(quad::fixed(poly, a, b, n), exact, 1e-12 * (1.0 + scale)) << "n=" << n;
  }
}

TEST(Quadrature, AdaptiveHandlesKinksAndPeaks) {
  const std::vector<double> br{-1.0, 0.0, 1.0};
  auto r = quad::adaptive_piecewise([](double x) { return std::abs(x); }, br);
  EXPECT_NEAR(r.value, 1.0, 1e-14);
  r = quad::adaptive([](double x) { return std::exp(-1e4 * x * x); }, -1.0, 1.0);
  EXPECT_NEAR(r.value, std::sqrt(std::numbers::pi / 1e4), 1e-12);
  EXPECT_TRUE(r.converged);
  r = quad::adaptive([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, {.rel_tol = 1e-10});
  EXPECT_NEAR(r.value, 2.0, 1e-6);
}

TEST(Quadrature, MergeBreaks) {
  const std::vector<double> base{0.0, 1.0, 2.0};
  const std::vector<double> extra{-1.0, 0.5, 1.0, 1.5, 3.0};
  const auto m = quad::merge_breaks(base, extra);
  EXPECT_EQ(m, (std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0}));
}

TEST(Roots, SafeguardedNewtonAndBisection) {
  auto f = [](double x) { return std::pair{x * x * x - 2.0, 3.0 * x * x}; };
  EXPECT_NEAR(transineq::roots::safeguarded_newton(f, 0.0, 5.0, 1e-15), std::cbrt(2.0), 1e-14);
  const double b = transineq::roots::bisect_increasing([](double x) { return std::exp(x); }, 3.0, 0.0, 5.0, 1e-13);
  EXPECT_NEAR(b, std::log(3.0), 1e-12);
}
