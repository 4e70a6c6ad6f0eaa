#include <cmath>
#include <memory>
#include <vector>

#include <gtest/gtest.h>

#include "oracles/frozen_values.hpp"
#include "transineq/errors.hpp"
#include "transineq/funcineq/beta.hpp"
#include "transineq/transport/distance.hpp"
#include "transineq/transport/gauss.hpp"
#include "transineq/transport/map.hpp"
#include "transineq/transport/weight.hpp"
#include "unit/gen.hpp"

using namespace transineq;

namespace {

PotentialMeasure on_half_line(double a, double theta) {
  PotentialSpec s = power_potential(a, theta);
  s.left_endpoint = 0.0;
  return normalize(s);
}

PotentialMeasure planar(double a, double theta) {
  PotentialSpec s = power_potential(a, theta);
  s.kind = MeasureKind::kRadial;
  s.dim = 2;
  return normalize(s);
}

}  // namespace

TEST(Gauss, IncompleteGammaClosedForms) {
  for (double x : {1e-3, 0.3, 1.0, 4.0, 30.0}) {
    EXPECT_NEAR(log_gamma_q(1.0, x), -x, 1e-13 * (1.0 + x));
    EXPECT_NEAR(std::exp(log_gamma_p(1.0, x)), -std::expm1(-x), 1e-14);
    EXPECT_NEAR(std::exp(log_gamma_p(0.5, x)), std::erf(std::sqrt(x)), 1e-14);
    EXPECT_NEAR(std::exp(log_gamma_q(0.5, x)) / std::erfc(std::sqrt(x)), 1.0, 1e-12);
  }
  EXPECT_NEAR(log_normal_sf(0.0), std::log(0.5), 1e-15);
  EXPECT_NEAR(log_normal_cdf(-40.0), log_normal_sf(40.0), 1e-12);
}

TEST(Gauss, TruncatedAndRadialReferences) {
  const GaussFunctions half(0.0, 1);
  EXPECT_NEAR(half.Phi_delta(1.0), std::erf(1.0 / std::sqrt(2.0)), 1e-14);
  EXPECT_NEAR(half.c_delta(), std::sqrt(std::acos(-1.0) / 2.0), 1e-14);
  EXPECT_NEAR(half.Phi_delta_inv(half.Phi_delta(0.7)), 0.7, 1e-13);
  const GaussFunctions g5(-INFINITY, 5);
  EXPECT_NEAR(g5.Phi0(2.0), oracle::kChi5Cdf2, 1e-14);
  EXPECT_NEAR(g5.Phi0_inv(oracle::kChi5Cdf2), 2.0, 1e-12);
}

TEST(TransportMap, ExponentialToHalfGaussian) {
  const auto map = TransportMap::build_1d(on_half_line(1.0, 1.0));
  EXPECT_NEAR(map.y(1.0), oracle::kExpMapY1, 1e-12);
  EXPECT_NEAR(map.y_inv(oracle::kExpMapY1), 1.0, 1e-11);
  EXPECT_DOUBLE_EQ(map.gauss().left_endpoint(), 0.0);
}

TEST(TransportMap, PlanarQuarticRadius) {
  const auto map = TransportMap::build_radial(planar(1.0, 4.0));
  EXPECT_TRUE(map.radial());
  EXPECT_NEAR(map.y(1.0), oracle::kRadialQuarticYbar1, 1e-11);
  EXPECT_DOUBLE_EQ(map.Ch(), 1.0);
  const auto p = map.map_point(0.6, 0.8);
  EXPECT_NEAR(p[0] / p[1], 0.75, 1e-14);
  EXPECT_NEAR(std::hypot(p[0], p[1]), oracle::kRadialQuarticYbar1, 1e-11);
}

TEST(TransportMap, GaussianIsFixed) {
  const auto map = TransportMap::build_1d(normalize(power_potential(0.5, 2)));
  for (double x = -6.0; x <= 6.0; x += 0.25) {
    EXPECT_NEAR(map.y(x), x, 1e-9);
    EXPECT_NEAR(map.dy(x), 1.0, 1e-8);
  }
}

// Phi_delta(y(x)) = phi(x) and y' matches a difference quotient, for random
// power potentials on R and [0, inf).
TEST(TransportProperty, PushforwardIdentity) {
  gen::Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const bool half = rng.coin();
    const double a = rng.uniform(0.3, 2.0), theta = rng.uniform(1.0, 5.0);
    const auto mu = half ? on_half_line(a, theta) : normalize(power_potential(a, theta));
    const auto map = TransportMap::build_1d(mu);
    for (int k = 0; k < 20; ++k) {
      const double x = mu.line().quantile(rng.uniform(1e-6, 1.0 - 1e-6));
      EXPECT_NEAR(map.gauss().Phi_delta(map.y(x)), mu.line().cdf(x), 1e-11);
      const double h = 1e-5 * (1.0 + std::abs(x));
      if (half && x < 2.0 * h) continue;
      const double fd = (map.y(x + h) - map.y(x - h)) / (2.0 * h);
      EXPECT_NEAR(map.dy(x), fd, 1e-5 * (1.0 + std::abs(fd)));
    }
  }
}

TEST(Weight, OneDimensionalIsInverseSquaredSlope) {
  const auto mu = normalize(power_potential(1.0, 4.0));
  auto map = std::make_shared<const TransportMap>(TransportMap::build_1d(mu));
  const auto w = weight_1d(map);
  EXPECT_EQ(w.tag(), WeightTag::kThm411);
  for (double x : {-3.0, -1.0, 0.0, 0.5, 2.0, 5.0}) {
    EXPECT_NEAR(w(x) * map->dy(x) * map->dy(x), 1.0, 1e-8);
  }
}

TEST(Weight, GaussianWeightsAreOne) {
  const auto w1 = weight_1d(normalize(power_potential(0.5, 2)));
  const auto w2 = weight_radial(planar(0.5, 2));
  for (double x : {-5.0, -1.0, 0.0, 2.0, 5.0}) EXPECT_NEAR(w1(x), 1.0, 1e-8);
  for (double r : {1e-8, 0.1, 1.0, 3.0, 5.0}) EXPECT_NEAR(w2(r, 0.3), 1.0, 1e-7);
}

TEST(Weight, Cor413Formula) {
  const auto mu = normalize(power_potential(1.0, 4.0));
  const auto w = weight_cor413(mu, 2.0, 4.0);
  EXPECT_NEAR(w(-3.0), 2.0 / 16.0, 1e-15);
  EXPECT_THROW(weight_cor413(mu, 0.0, 4.0), Error);
}

// The threshold 1 / Phibar(s - 2) grows with s, so alpha can only decrease.
TEST(Weight, Thm11IsBoundedAndNonIncreasingInDistance) {
  const auto mu = normalize(power_potential(1.0, 4.0));
  const auto w = weight_thm11(mu, BetaProfile::exp_power(2.0, 1.5));
  EXPECT_TRUE(std::isfinite(w.sup_bound()));
  double prev = INFINITY;
  for (double s = 0.0; s <= 6.0; s += 0.25) {
    const double v = w(s);
    EXPECT_LE(v, prev + 1e-12);
    EXPECT_GT(v, 0.0);
    EXPECT_LE(v, w.sup_bound() + 1e-12);
    EXPECT_DOUBLE_EQ(v, w(-s));
    prev = v;
  }
  // Below distance 2 the threshold is t >= 1, so alpha is sup eta.
  EXPECT_DOUBLE_EQ(w(1.5), w.sup_bound());
}

TEST(Weight, Thm11DetectsUnboundedEta) {
  const auto mu = normalize(power_potential(1.0, 4.0));
  try {
    weight_thm11(mu, BetaProfile::exp_power(1.0, 0.5));
    FAIL() << "expected EtaUnbounded";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEtaUnbounded);
  }
}

TEST(Distance, Modes) {
  const auto e = DistanceEvaluator::euclidean();
  const std::vector<double> x{0.0, 3.0}, y{4.0, 0.0};
  EXPECT_DOUBLE_EQ(e(x, y), 5.0);
  const auto rt = DistanceEvaluator::rho_tilde(1.5);
  EXPECT_NEAR(rt(1.0, 3.0), 2.0 / std::pow(4.0, 0.25), 1e-15);
  const auto pc = DistanceEvaluator::power_comparison(1.5);
  EXPECT_NEAR(pc(-1.0, 3.0), 4.0 * 4.0, 1e-14);
  EXPECT_THROW(DistanceEvaluator::rho_tilde(2.0), Error);

  auto flat = std::make_shared<const WeightProfile>(WeightTag::kCor413Envelope,
                                                   [](double, double) { return 4.0; });
  const auto geo = DistanceEvaluator::weighted_geodesic(flat);
  EXPECT_NEAR(geo(-1.0, 2.0), 1.5, 1e-12);

  const auto mu = normalize(power_potential(1.0, 4.0));
  auto map = std::make_shared<const TransportMap>(TransportMap::build_1d(mu));
  const auto pb = DistanceEvaluator::pullback(map);
  EXPECT_NEAR(pb(0.2, 1.1), map->y(1.1) - map->y(0.2), 1e-13);
  EXPECT_STREQ(distance_mode_name(pb.mode()), "pullback");
}

// The metric modes satisfy the metric axioms on random triples.
TEST(DistanceProperty, TriangleInequalityAndSymmetry) {
  gen::Rng rng(9);
  const auto mu = normalize(power_potential(1.0, 3.0));
  auto map = std::make_shared<const TransportMap>(TransportMap::build_1d(mu));
  auto w = std::make_shared<const WeightProfile>(weight_1d(map));
  const std::vector<DistanceEvaluator> evs{DistanceEvaluator::euclidean(), DistanceEvaluator::pullback(map),
                                           DistanceEvaluator::weighted_geodesic(w)};
  for (const auto& d : evs) {
    for (int k = 0; k < 100; ++k) {
      const double a = rng.uniform(-4, 4), b = rng.uniform(-4, 4), c = rng.uniform(-4, 4);
      EXPECT_NEAR(d(a, b), d(b, a), 1e-12 * (1.0 + d(a, b)));
      EXPECT_LE(d(a, c), d(a, b) + d(b, c) + 1e-10) << distance_mode_name(d.mode());
      EXPECT_DOUBLE_EQ(d(a, a), 0.0);
    }
  }
}
