// Reference values computed in the test itself.

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "transineq/errors.hpp"
#include "transineq/funcineq/beta.hpp"
#include "transineq/funcineq/checks.hpp"
#include "transineq/funcineq/family.hpp"
#include "transineq/ot/discrete_ot.hpp"
#include "transineq/ot/quantile_ot.hpp"
#include "unit/gen.hpp"

using namespace transineq;

namespace {

template <class F>
double trapezoid(const F& f, double a, double b, long n) {
  const double h = (b - a) / n;
  double s = 0.5 * (f(a) + f(b));
  for (long i = 1; i < n; ++i) s += f(a + i * h);
  return s * h;
}

PotentialMeasure planar(double a, double theta) {
  PotentialSpec s = power_potential(a, theta);
  s.kind = MeasureKind::kRadial;
  s.dim = 2;
  return normalize(s);
}

PotentialMeasure exponential(double rate) {
  PotentialSpec s = power_potential(rate, 1.0);
  s.left_endpoint = 0.0;
  return normalize(s);
}

}  // namespace

TEST(Oracle, PlanarQuarticMassByTrapezoid) {
  const double z = 2.0 * std::numbers::pi * trapezoid([](double r) { return r * std::exp(-std::pow(r, 4)); }, 0, 8, 1000000);
  EXPECT_NEAR(planar(1.0, 4.0).Z(), z, 1e-8);
}

TEST(Oracle, QuarticExponentialMomentByTrapezoid) {
  const auto m4 = normalize(power_potential(1, 4));
  const double num = trapezoid([](double x) { return std::exp(0.5 * std::pow(x, 4) - std::pow(x, 4)); }, -8, 8, 1000000);
  const double z = trapezoid([](double x) { return std::exp(-std::pow(x, 4)); }, -8, 8, 1000000);
  const auto m = exp_moment(m4, 0.5, 4.0);
  ASSERT_TRUE(m.finite);
  EXPECT_NEAR(m.value / (num / z), 1.0, 1e-7);
  EXPECT_FALSE(exp_moment(m4, 1.0, 4.0).finite);
  EXPECT_FALSE(exp_moment(m4, 0.5, 4.5).finite);
}

TEST(Oracle, ChiCdfByTrapezoid) {
  const double z = trapezoid([](double r) { return std::pow(r, 4) * std::exp(-0.5 * r * r); }, 0, 40, 10000000);
  const double part = trapezoid([](double r) { return std::pow(r, 4) * std::exp(-0.5 * r * r); }, 0, 2, 10000000);
  EXPECT_NEAR(GaussFunctions(-HUGE_VAL, 5).Phi0(2.0), part / z, 1e-9);
}

// mu(|x| >= s) ~ 2 e^{-s^4} / (4 s^3 Z) for e^{-x^4}.
TEST(Oracle, QuarticTailAsymptotics) {
  const auto m4 = normalize(power_potential(1, 4));
  const DistFunctions df(m4);
  const double limit = 1.0 / (2.0 * m4.Z());
  for (double s = 2.0; s <= 4.0; s += 0.25) {
    const double scaled = std::exp(df.log_tail_bar(s) + std::pow(s, 4)) * std::pow(s, 3);
    EXPECT_NEAR(scaled / limit, 1.0, 0.05) << "s=" << s;
  }
}

TEST(Oracle, NormalisationAndTailComplement) {
  gen::Rng rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const auto mu = normalize(power_potential(rng.uniform(0.3, 3.0), rng.uniform(1.0, 5.0)));
    EXPECT_NEAR(mu.line().expect([](double) { return 1.0; }), 1.0, 1e-10);
    const DistFunctions df(mu);
    for (double s : {0.1, 0.5, 1.0, 2.0}) {
      EXPECT_NEAR(df.tail_bar(s), 1.0 - (mu.line().cdf(s) - mu.line().cdf(-s)), 1e-12);
    }
  }
}

TEST(Oracle, EqualMassGridMomentsConvergeLikeOneOverN) {
  const auto g = normalize(power_potential(0.5, 2));
  double prev = 0.0;
  for (int n : {100, 1000, 10000}) {
    const auto grid = discretize(g, n, GridScheme::kEqualMass);
    double mean = 0.0, var = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      mean += grid.masses[i] * grid.points[i];
      var += grid.masses[i] * grid.points[i] * grid.points[i];
    }
    EXPECT_LT(std::abs(mean), 1e-3);
    const double err = std::abs(1.0 - var);
    if (prev > 0.0) EXPECT_NEAR(prev / err, 10.0, 2.0) << "n=" << n;
    prev = err;
  }
}

TEST(Oracle, AngularOscillationConstant) {
  PotentialSpec s = power_potential(1, 2);
  s.kind = MeasureKind::kRadialAngular;
  s.dim = 2;
  s.epsilon = 0.1;
  // h(angle) = e^{0.1 cos angle} / 2 per direction.
  EXPECT_NEAR(normalize(s).Ch(), std::exp(0.2), 1e-6);
}

// alpha = 1 / y'^2 and y ~ sqrt(2 log(1/tail)) give x^2 alpha -> 1/8 for e^{-x^4}.
TEST(Oracle, QuarticWeightAsymptotics) {
  const auto m4 = normalize(power_potential(1, 4));
  const auto w = weight_1d(m4);
  const double first = 9.0 * w(3.0);
  for (double x = 3.0; x <= 6.0; x += 0.5) EXPECT_NEAR(x * x * w(x) / first, 1.0, 0.10) << "x=" << x;
  EXPECT_NEAR(36.0 * w(6.0), 0.125, 0.01);
}

TEST(Oracle, PlanarQuarticWeightEnvelope) {
  const auto r4 = planar(1.0, 4.0);
  const auto env = envelope(r4, weight_radial(r4), 4.0, 2.0, 6.0);
  EXPECT_LE(env.c, 10.0);
}

// eta ~ (log s)^{1 - delta}: bounded for delta >= 1, unbounded below.
TEST(Oracle, EtaBoundednessFollowsDelta) {
  const auto m4 = normalize(power_potential(1, 4));
  EXPECT_TRUE(std::isfinite(weight_thm11(m4, BetaProfile::exp_power(1.0, 1.5)).sup_bound()));
  EXPECT_TRUE(std::isfinite(weight_thm11(m4, BetaProfile::exp_power(1.0, 1.0)).sup_bound()));
  EXPECT_THROW(weight_thm11(m4, BetaProfile::exp_power(1.0, 0.5)), Error);
}

TEST(Oracle, ComparisonDistanceGrowth) {
  const auto rt = DistanceEvaluator::rho_tilde(1.5);
  const double first = rt(0.0, 10.0) / std::pow(10.0, 0.75);
  for (double x = 10.0; x <= 100.0; x += 10.0) {
    EXPECT_NEAR(rt(0.0, x) / std::pow(x, 0.75) / first, 1.0, 0.05);
    EXPECT_NEAR(rt(0.0, -x), rt(0.0, x), 1e-12);
  }
}

// rho_alpha(x1, x2)^2 >= c7 |x1 - x2|^{2 / (2 - delta)} with delta = 2 - 2 / theta.
TEST(Oracle, WeightedGeodesicDominatesPowerDistance) {
  const double theta = 4.0, delta = 2.0 - 2.0 / theta;
  const auto m4 = normalize(power_potential(1, theta));
  const auto geo = DistanceEvaluator::weighted_geodesic(
      std::make_shared<const WeightProfile>(weight_cor413(m4, 1.0, theta)));
  gen::Rng rng(14);
  double c7 = INFINITY;
  for (int k = 0; k < 1000; ++k) {
    const double a = rng.uniform(-20, 20), b = rng.uniform(-20, 20);
    if (a == b) continue;
    c7 = std::min(c7, std::pow(geo(a, b), 2) / std::pow(std::abs(a - b), 2.0 / (2.0 - delta)));
  }
  EXPECT_GT(c7, 0.01);
  EXPECT_TRUE(std::isfinite(c7));
}

TEST(Oracle, GaussianDistancesAreEuclidean) {
  const auto g = normalize(power_potential(0.5, 2));
  auto map = std::make_shared<const TransportMap>(TransportMap::build_1d(g));
  const auto pb = DistanceEvaluator::pullback(map);
  const auto geo = DistanceEvaluator::weighted_geodesic(std::make_shared<const WeightProfile>(weight_1d(map)));
  gen::Rng rng(15);
  for (int k = 0; k < 50; ++k) {
    const double a = rng.uniform(-5, 5), b = rng.uniform(-5, 5);
    EXPECT_NEAR(pb(a, b), std::abs(a - b), 1e-6);
    EXPECT_NEAR(geo(a, b), std::abs(a - b), 1e-6);
  }
  for (double x = -6.0; x <= 6.0; x += 0.5) EXPECT_GT(map->dy(x), 0.0);
}

TEST(Oracle, QuantileCouplingConvergesOnDoublingGrids) {
  const auto a = exponential(1.0), b = exponential(0.6);
  const double q = w_quantile_1d(*density_source(a.line_ptr()), *density_source(b.line_ptr()), CostFn::power(2)).value;
  double prev = INFINITY;
  for (int n : {128, 256, 512}) {
    const auto plan = discrete_ot(discretize(a, n, GridScheme::kEqualMass), discretize(b, n, GridScheme::kEqualMass),
                                  CostFn::power(2));
    const double rel = std::abs(std::sqrt(plan.total_cost) - q) / q;
    EXPECT_LT(rel, 0.6 * prev) << "n=" << n;
    prev = rel;
  }
}

TEST(Oracle, PullbackWassersteinAgreesWithDiscreteSolver) {
  const auto m4 = normalize(power_potential(1, 4));
  auto map = std::make_shared<const TransportMap>(TransportMap::build_1d(m4));
  const auto fam = make_family(m4, FamilyTag::kLipschitzBumps);
  const DensityPerturbation pert(m4, fam.members[5]);
  const double W = w_pullback(m4, pert, *map);
  const auto line = perturbed_line(m4, pert);
  double prev = INFINITY;
  for (int n : {256, 512}) {
    GridMeasure src, dst;
    for (int k = 0; k < n; ++k) {
      src.points.push_back(m4.line().quantile((k + 0.5) / n));
      dst.points.push_back(line->quantile((k + 0.5) / n));
      src.masses.push_back(1.0 / n);
      dst.masses.push_back(1.0 / n);
    }
    const auto plan = discrete_ot(src, dst, CostFn::pullback_sq(map));
    const double rel = std::abs(std::sqrt(plan.total_cost) - W) / W;
    EXPECT_LT(rel, 0.6 * prev);
    EXPECT_LT(rel, 1e-2);
    prev = rel;
  }
}

TEST(Oracle, WassersteinTriangleInequality) {
  gen::Rng rng(16);
  for (int k = 0; k < 10; ++k) {
    std::vector<std::shared_ptr<const QuantileSource>> s;
    std::vector<PotentialMeasure> keep;
    for (int j = 0; j < 3; ++j) keep.push_back(normalize(power_potential(rng.uniform(0.5, 2), rng.uniform(1.5, 4))));
    for (auto& m : keep) s.push_back(density_source(m.line_ptr()));
    auto w = [&](int i, int j) { return w_quantile_1d(*s[i], *s[j], CostFn::power(2)).value; };
    EXPECT_LE(w(0, 2), w(0, 1) + w(1, 2) + 1e-6);
  }
}

TEST(Oracle, LaDBranchesMeet) {
  gen::Rng rng(17);
  for (int k = 0; k < 50; ++k) {
    const double a = rng.uniform(0.1, 5), D = rng.uniform(1.0, 1.99);
    const auto c = CostFn::l_aD(a, D);
    const double right = std::pow(a, 2.0 - D) / D * std::pow(a, D) + a * a * (D - 2.0) / (2.0 * D);
    EXPECT_NEAR(c.of_distance(a), right, 1e-12 * (1.0 + a * a));
    EXPECT_NEAR(c.of_distance(std::nextafter(a, 10.0)), c.of_distance(a), 1e-12 * (1.0 + a * a));
  }
}

TEST(Oracle, SmallEntropyMeansFlatDensity) {
  const auto g = normalize(power_potential(0.5, 2));
  for (const auto& p : instantiate(g, make_family(g, FamilyTag::kHermiteLike))) {
    if (entropy(g, p) >= 1e-10) continue;
    for (double x = -5.0; x <= 5.0; x += 0.1) EXPECT_LT(std::abs(std::exp(p.log_density(x)) - 1.0), 1e-4);
  }
  const auto tilts = instantiate(g, make_family(g, FamilyTag::kExpTilts));
  const auto zero = std::find_if(tilts.begin(), tilts.end(), [](const auto& p) { return p.param() == 0.0; });
  ASSERT_NE(zero, tilts.end());
  EXPECT_LT(entropy(g, *zero), 1e-10);
}

// Scaling f does not move any ratio.
TEST(Oracle, CheckersAreHomogeneous) {
  const auto g = normalize(power_potential(0.5, 2));
  const auto fam = make_family(g, FamilyTag::kLipschitzBumps);
  TestFunctionFamily scaled = fam;
  for (auto& d : scaled.members) {
    auto f = d.f;
    auto df = d.df_r;
    d.f = [f](double x, double a) { return 7.0 * f(x, a); };
    d.df_r = [df](double x, double a) { return 7.0 * df(x, a); };
    d.log_abs_f = {};
    d.log_grad_sq = {};
  }
  const auto a = instantiate(g, fam), b = instantiate(g, scaled);
  const auto ra = check_wlsi(g, nullptr, a), rb = check_wlsi(g, nullptr, b);
  const std::vector<double> rs{0.01, 0.1, 1.0};
  const auto sa = check_super_poincare(g, BetaProfile::exp_power(2.0, 1.0), rs, a);
  const auto sb = check_super_poincare(g, BetaProfile::exp_power(2.0, 1.0), rs, b);
  for (std::size_t i = 0; i < ra.records().size(); ++i) {
    EXPECT_NEAR(ra.records()[i].ratio, rb.records()[i].ratio, 1e-9 * (1.0 + ra.records()[i].ratio));
  }
  for (std::size_t i = 0; i < sa.records().size(); ++i) {
    EXPECT_NEAR(sa.records()[i].ratio, sb.records()[i].ratio, 1e-9 * (1.0 + sa.records()[i].ratio));
  }
}

TEST(Oracle, PlanarQuarticHwiHoldsOnBumps) {
  const auto r4 = planar(1.0, 4.0);
  const auto map = TransportMap::build_radial(r4);
  const auto w = weight_radial(r4);
  const auto s = check_hwi(r4, &w, map, instantiate(r4, make_family(r4, FamilyTag::kLipschitzBumps))).summary();
  EXPECT_EQ(s.violation_count, 0u);
  EXPECT_GT(s.n_members, s.n_skipped);
}

// log beta(r) r^{1/delta} stays bounded, and the inner s-grid resolution
// does not matter once the search is refined.
TEST(Oracle, MomentRateShapeAndGridIndependence) {
  const auto m4 = normalize(power_potential(1, 4));
  std::vector<double> rs;
  for (int k = 0; k <= 8; ++k) rs.push_back(std::pow(10.0, -3.0 + 0.25 * k));
  MomentsBetaOptions coarse, fine;
  coarse.n_s = 10;
  fine.n_s = 40;
  const auto a = beta_from_moments(m4, rs, coarse), b = beta_from_moments(m4, rs, fine);
  double lo = INFINITY, hi = 0.0;
  for (double r : rs) {
    EXPECT_NEAR(a.log_beta(r), b.log_beta(r), 0.05 * std::abs(b.log_beta(r)));
    const double v = b.log_beta(r) * std::pow(r, 1.0 / 1.5);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  EXPECT_LT(hi / lo, 3.0);
}
