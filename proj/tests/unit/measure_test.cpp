#include <cmath>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles/frozen_values.hpp"
#include "transineq/errors.hpp"
#include "transineq/measure/density1d.hpp"
#include "transineq/measure/potential.hpp"
#include "unit/gen.hpp"

using namespace transineq;

namespace {

PotentialMeasure radial(double a, double theta, int dim) {
  PotentialSpec s = power_potential(a, theta);
  s.kind = MeasureKind::kRadial;
  s.dim = dim;
  return normalize(s);
}

PotentialMeasure exponential(double rate) {
  PotentialSpec s = power_potential(rate, 1.0);
  s.left_endpoint = 0.0;
  return normalize(s);
}

}  // namespace

TEST(Measure, NormalisingConstants) {
  EXPECT_NEAR(normalize(power_potential(0.5, 2)).Z(), std::sqrt(2.0 * std::numbers::pi), 1e-12);
  EXPECT_NEAR(normalize(power_potential(1, 4)).Z() / oracle::kQuarticZ, 1.0, 1e-11);
  EXPECT_NEAR(exponential(2.0).Z(), 0.5, 1e-13);
  // (2 pi)^{d/2} for the standard Gaussian in R^3.
  EXPECT_NEAR(radial(0.5, 2, 3).Z(), std::pow(2.0 * std::numbers::pi, 1.5), 1e-10);
  EXPECT_NEAR(sphere_area(2), 2.0 * std::numbers::pi, 1e-14);
  EXPECT_NEAR(sphere_area(3), 4.0 * std::numbers::pi, 1e-14);
}

TEST(Measure, Moments) {
  const auto m4 = normalize(power_potential(1, 4));
  EXPECT_NEAR(m4.line().expect([](double x) { return x * x; }), oracle::kQuarticSecondMoment, 1e-11);
  EXPECT_NEAR(m4.line().expect([](double x) { return x; }), 0.0, 1e-13);
}

TEST(Measure, ExponentialMoments) {
  const auto g = normalize(power_potential(0.5, 2));
  auto m = exp_moment(g, 0.25, 2.0);
  ASSERT_TRUE(m.finite);
  EXPECT_NEAR(m.value, std::sqrt(2.0), 1e-11);
  EXPECT_FALSE(exp_moment(g, 0.5, 2.0).finite);
  EXPECT_FALSE(exp_moment(g, 1.0, 3.0).finite);
  EXPECT_FALSE(exp_moment(g, 1.0, 1.0, MomentMode::kDouble).finite);
  const auto m4 = normalize(power_potential(1, 4));
  m = exp_moment(m4, 1.0, 2.0);
  ASSERT_TRUE(m.finite);
  EXPECT_NEAR(m.value / oracle::kQuarticExpMoment, 1.0, 1e-10);
  EXPECT_THROW(exp_moment(g, -1.0, 2.0), Error);
}

TEST(Measure, DeepTailsStayRelativelyAccurate) {
  const auto m4 = normalize(power_potential(1, 4));
  EXPECT_NEAR(m4.line().log_sf(3.0), oracle::kQuarticLogSf3, 1e-9);
  EXPECT_NEAR(m4.line().log_cdf(-3.0), oracle::kQuarticLogSf3, 1e-9);
  EXPECT_NEAR(m4.line().quantile_log_upper(oracle::kQuarticLogSf3), 3.0, 1e-10);
  const auto g = normalize(power_potential(0.5, 2));
  // log P(Z >= 30) = log(erfc(30 / sqrt 2) / 2).
  EXPECT_NEAR(g.line().log_sf(30.0), -454.3212439563432, 1e-8);
}

TEST(Measure, RadialLaw) {
  const auto g5 = radial(0.5, 2, 5);
  EXPECT_NEAR(DistFunctions(g5).cdf(2.0), oracle::kChi5Cdf2, 1e-11);
  EXPECT_NEAR(DistFunctions(g5).tail_bar(2.0), 1.0 - oracle::kChi5Cdf2, 1e-11);
  const auto q2 = radial(1, 4, 2);
  // |x| has cdf erf(r^2) for e^{-|x|^4} in the plane.
  EXPECT_NEAR(q2.line().cdf(0.8), std::erf(0.64), 1e-11);
}

TEST(Measure, TailBarConventions) {
  const auto g = normalize(power_potential(0.5, 2));
  const DistFunctions df(g);
  EXPECT_DOUBLE_EQ(df.tail_bar(-1.0), 1.0);
  EXPECT_NEAR(df.tail_bar(1.0), std::erfc(1.0 / std::sqrt(2.0)), 1e-13);
  const auto e = exponential(1.0);
  EXPECT_NEAR(DistFunctions(e).tail_bar(2.0), std::exp(-2.0), 1e-13);
  EXPECT_DOUBLE_EQ(DistFunctions(e).radius(3.0), 3.0);
}

TEST(MeasureProperty, QuantileInvertsCdf) {
  gen::Rng rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const auto mu = normalize(power_potential(rng.uniform(0.3, 3.0), rng.uniform(1.2, 6.0)));
    for (int k = 0; k < 25; ++k) {
      const double u = rng.uniform(1e-9, 1.0 - 1e-9);
      const double x = mu.line().quantile(u);
      EXPECT_NEAR(mu.line().cdf(x), u, 1e-11 * (1.0 + u));
      EXPECT_NEAR(mu.line().cdf(x) + mu.line().sf(x), 1.0, 1e-11);
    }
  }
}

TEST(Measure, QuantileRange) {
  const auto g = normalize(power_potential(0.5, 2));
  EXPECT_THROW(g.line().quantile(0.0), Error);
  EXPECT_THROW(g.line().quantile(1.5), Error);
}

TEST(Measure, GeneralExpressionMatchesPowerFamily) {
  const auto a = normalize(parse_potential("-r^2/2 + 0*abs(r)"));
  const auto b = normalize(power_potential(0.5, 2));
  for (double x : {-3.0, -0.5, 0.0, 1.0, 4.0}) EXPECT_NEAR(a.line().cdf(x), b.line().cdf(x), 1e-11);
}

TEST(Measure, NonIntegrablePotential) {
  EXPECT_THROW(normalize(parse_potential("r^2")), Error);
}

TEST(Measure, Discretize) {
  const auto g = normalize(power_potential(0.5, 2));
  const auto eq = discretize(g, 64, GridScheme::kEqualMass);
  ASSERT_EQ(eq.size(), 64u);
  EXPECT_FALSE(eq.polar());
  for (std::size_t k = 0; k < eq.size(); ++k) {
    EXPECT_DOUBLE_EQ(eq.masses[k], 1.0 / 64);
    EXPECT_NEAR(g.line().cdf(eq.points[k]), (k + 0.5) / 64, 1e-12);
  }
  const auto sp = discretize(g, 50, GridScheme::kEqualSpace);
  double total = 0.0;
  for (double m : sp.masses) total += m;
  EXPECT_NEAR(total, 1.0, 1e-14);
  EXPECT_NEAR(sp.points[1] - sp.points[0], sp.spacing, 1e-12);
  std::ostringstream os;
  eq.write_csv(os);
  EXPECT_NE(os.str().find('\n'), std::string::npos);
  EXPECT_THROW(discretize(g, 1, GridScheme::kEqualMass), Error);
}
