#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "oracles/frozen_values.hpp"
#include "transineq/errors.hpp"
#include "transineq/funcineq/family.hpp"
#include "transineq/ot/cost.hpp"
#include "transineq/ot/discrete_ot.hpp"
#include "transineq/ot/perturbation.hpp"
#include "transineq/ot/quantile_ot.hpp"
#include "unit/gen.hpp"

using namespace transineq;

namespace {

PotentialMeasure exponential(double rate) {
  PotentialSpec s = power_potential(rate, 1.0);
  s.left_endpoint = 0.0;
  return normalize(s);
}

// Brute force over all permutations for uniform n x n instances.
double permutation_min(const std::vector<double>& c, int n) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = INFINITY;
  do {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += c[i * n + perm[i]];
    best = std::min(best, s / n);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// North-west corner coupling of sorted supports, optimal on the line for
// costs convex in |x - y|.
double monotone_cost(const std::vector<double>& x, const std::vector<double>& mx, const std::vector<double>& y,
                     const std::vector<double>& my, const CostFn& cost) {
  std::size_t i = 0, j = 0;
  double ri = mx[0], rj = my[0], total = 0.0;
  while (i < x.size() && j < y.size()) {
    const double m = std::min(ri, rj);
    total += m * cost(x[i], y[j]);
    ri -= m;
    rj -= m;
    if (ri <= 1e-15 && ++i < x.size()) ri = mx[i];
    if (rj <= 1e-15 && ++j < y.size()) rj = my[j];
  }
  return total;
}

}  // namespace

TEST(QuantileOt, ExponentialRates) {
  const auto a = exponential(1.0), b = exponential(1.7);
  const auto r = w_quantile_1d(*density_source(a.line_ptr()), *density_source(b.line_ptr()), CostFn::power(2));
  EXPECT_NEAR(r.value, std::sqrt(2.0) * (1.0 - 1.0 / 1.7), 1e-10);
  EXPECT_NEAR(r.raw, r.bulk + r.tails, 1e-15);
  EXPECT_LT(r.tail_error, 1e-12);
}

TEST(QuantileOt, GaussianShiftsAndScales) {
  const auto z = gaussian_source();
  EXPECT_NEAR(w_quantile_1d(*z, *gaussian_source(-INFINITY, 0.7), CostFn::power(2)).value, 0.7, 1e-11);
  // W2(N(0, 1), N(0, s^2)) = |1 - s|.
  EXPECT_NEAR(w_quantile_1d(*z, *gaussian_source(-INFINITY, 0.0, 2.5), CostFn::power(2)).value, 1.5, 1e-10);
  // W1 of a shift is the shift for any law.
  EXPECT_NEAR(w_quantile_1d(*z, *gaussian_source(-INFINITY, -0.3), CostFn::power(1)).value, 0.3, 1e-11);
  EXPECT_NEAR(w_quantile_1d(*z, *z, CostFn::power(2)).value, 0.0, 1e-15);
}

TEST(QuantileOt, GaussianToQuartic) {
  const auto m4 = normalize(power_potential(1, 4));
  const auto r = w_quantile_1d(*gaussian_source(), *density_source(m4.line_ptr()), CostFn::power(2));
  EXPECT_NEAR(r.value, oracle::kW2GaussQuartic, 1e-9);
}

TEST(QuantileOt, MappedAndRadialSources) {
  const auto z = gaussian_source();
  const auto twice = mapped_source(z, [](double x) { return 2.0 * x; });
  EXPECT_NEAR(w_quantile_1d(*z, *twice, CostFn::power(2)).value, 1.0, 1e-10);
  EXPECT_NEAR(radial_gaussian_source(5)->q(oracle::kChi5Cdf2), 2.0, 1e-11);
}

TEST(QuantileOt, RejectsCostsWithoutMonotoneCoordinate) {
  const auto z = gaussian_source();
  EXPECT_THROW(w_quantile_1d(*z, *z, CostFn::rho_tilde_sq(1.5)), Error);
  EXPECT_THROW(CostFn::power(0.5), Error);
  EXPECT_THROW(CostFn::l_aD(1.0, 0.5), Error);
}

TEST(Cost, LaDIsC1AtTheJoin) {
  const auto c = CostFn::l_aD(1.5, 1.4);
  const double a = 1.5, h = 1e-7;
  EXPECT_NEAR(c.of_distance(a - h), c.of_distance(a + h), 1e-6);
  const double left = (c.of_distance(a) - c.of_distance(a - h)) / h;
  const double right = (c.of_distance(a + h) - c.of_distance(a)) / h;
  EXPECT_NEAR(left, right, 1e-5);
  EXPECT_DOUBLE_EQ(CostFn::exp_cost(0.5).of_distance(2.0), 4.0 * std::exp(1.0));
}

TEST(DiscreteOt, MatchesPermutationBruteForce) {
  gen::Rng rng(1);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = rng.integer(2, 6);
    std::vector<double> c(n * n), w(n, 1.0 / n);
    for (double& v : c) v = rng.uniform(-3, 3) * rng.uniform(-3, 3);
    const auto plan = discrete_ot(w, w, c);
    EXPECT_TRUE(plan.certified);
    EXPECT_NEAR(plan.total_cost, permutation_min(c, n), 1e-10);
  }
}

// Random weighted supports: the exact solver agrees with the monotone
// coupling for convex costs, and its plan has the right marginals.
TEST(DiscreteOtProperty, LineInstancesMatchMonotoneCoupling) {
  gen::Rng rng(2);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = rng.integer(2, 30), m = rng.integer(2, 30);
    GridMeasure a, b;
    a.points = rng.increasing(n, -2.0, 2.0);
    b.points = rng.increasing(m, -1.0, 3.0);
    a.masses = rng.masses(n);
    b.masses = rng.masses(m);
    const double p = rng.uniform(1.0, 4.0);
    const auto cost = CostFn::power(p);
    const auto plan = discrete_ot(a, b, cost);
    ASSERT_TRUE(plan.certified);
    EXPECT_LT(plan.marginal_residual, 1e-12);
    EXPECT_NEAR(plan.total_cost, monotone_cost(a.points, a.masses, b.points, b.masses, cost), 1e-10);
    std::vector<double> rows(n, 0.0), cols(m, 0.0);
    for (const auto& e : plan.entries) {
      EXPECT_GE(e.mass, 0.0);
      rows[e.i] += e.mass;
      cols[e.j] += e.mass;
    }
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(rows[i], a.masses[i], 1e-12);
    for (std::size_t j = 0; j < m; ++j) EXPECT_NEAR(cols[j], b.masses[j], 1e-12);
  }
}

TEST(DiscreteOt, SizeLimitAndCsv) {
  GridMeasure big;
  big.points.assign(kMaxOtPoints + 1, 0.0);
  big.masses.assign(kMaxOtPoints + 1, 1.0 / (kMaxOtPoints + 1));
  try {
    discrete_ot(big, big, CostFn::power(2));
    FAIL() << "expected SizeLimitExceeded";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSizeLimitExceeded);
  }
  const std::vector<double> w{0.5, 0.5}, c{0.0, 1.0, 1.0, 0.0};
  const auto plan = discrete_ot(w, w, c);
  EXPECT_DOUBLE_EQ(plan.total_cost, 0.0);
  std::ostringstream os;
  plan.write_csv(os);
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "i,j,mass");
}

// Tilt e^{lambda x / 2} of N(0, 1) gives N(lambda, 1): Ent = lambda^2 / 2,
// energy lambda^2 / 4, W2 = |lambda|.
TEST(Perturbation, GaussianTiltTriple) {
  const auto g = normalize(power_potential(0.5, 2));
  const auto map = TransportMap::build_1d(g);
  const auto fam = instantiate(g, make_family(g, FamilyTag::kExpTilts));
  for (const auto& p : fam) {
    const double lam = p.param();
    EXPECT_NEAR(mass(g, p), 1.0, 1e-11) << p.id();
    EXPECT_NEAR(entropy(g, p), lam * lam / 2.0, 1e-10) << p.id();
    EXPECT_NEAR(energy(g, p), lam * lam / 4.0, 1e-10) << p.id();
    EXPECT_NEAR(w_pullback(g, p, map), std::abs(lam), 1e-9) << p.id();
    EXPECT_NEAR(abs_mean(g, p), std::exp(-lam * lam / 8.0), 1e-11) << p.id();
  }
}

TEST(Perturbation, QuarticTiltEntropy) {
  const auto m4 = normalize(power_potential(1, 4));
  const auto fam = instantiate(m4, make_family(m4, FamilyTag::kExpTilts));
  const auto it = std::find_if(fam.begin(), fam.end(), [](const auto& p) { return std::abs(p.param() - 1.0) < 1e-12; });
  ASSERT_NE(it, fam.end());
  EXPECT_NEAR(entropy(m4, *it), oracle::kQuarticTiltEntropy, 1e-10);
  EXPECT_NEAR(energy(m4, *it), 0.25, 1e-10);
}

TEST(Perturbation, AngularMembersHaveNoRay) {
  PotentialSpec s = power_potential(0.5, 2);
  s.kind = MeasureKind::kRadial;
  s.dim = 2;
  const auto mu = normalize(s);
  FamilyOptions opt;
  opt.angular = true;
  const auto fam = instantiate(mu, make_family(mu, FamilyTag::kRadialProducts, opt));
  const auto it = std::find_if(fam.begin(), fam.end(), [](const auto& p) { return p.def().angular; });
  ASSERT_NE(it, fam.end());
  EXPECT_THROW(perturbed_line(mu, *it), Error);
  EXPECT_NEAR(mass(mu, *it), 1.0, 1e-10);
}
