#include "transineq/ot/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "transineq/errors.hpp"

namespace transineq {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> uniform_angles() {
  std::vector<double> a(kAngularGridSize);
  for (int k = 0; k < kAngularGridSize; ++k) a[k] = 2.0 * std::numbers::pi * k / kAngularGridSize;
  return a;
}

}  // namespace

DensityPerturbation::DensityPerturbation(const PotentialMeasure& mu, PerturbationDef def)
    : def_(std::move(def)) {
  if (!def_.f || !def_.df_r) {
    throw Error(ErrorCode::kInvalidArgument, "perturbation needs f and its radial derivative");
  }
  if (def_.angular && (mu.spec().dim != 2 || !mu.spec().is_radial())) {
    throw Error(ErrorCode::kInvalidArgument, "angular test functions need a planar radial measure");
  }
  const double n = mu_expect(
      mu, def_.angular, [this](double x, double a) { return 2.0 * log_abs_f(x, a); },
      [](double, double) { return 1.0; }, def_.breaks);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw Error(ErrorCode::kNonIntegrable, "mu(f^2) is not a positive finite number for " + def_.id);
  }
  log_norm_ = std::log(n);
}

double DensityPerturbation::log_abs_f(double x, double angle) const {
  if (def_.log_abs_f) return def_.log_abs_f(x, angle);
  return std::log(std::abs(def_.f(x, angle)));
}

double DensityPerturbation::log_grad_sq(double x, double angle) const {
  if (def_.log_grad_sq) return def_.log_grad_sq(x, angle);
  const double gr = def_.df_r(x, angle);
  double g2 = gr * gr;
  if (def_.df_angle && x != 0.0) {
    const double ga = def_.df_angle(x, angle) / x;
    g2 += ga * ga;
  }
  return g2 > 0.0 ? std::log(g2) : -kInf;
}

double mu_expect(const PotentialMeasure& mu, bool angular,
                 const std::function<double(double, double)>& log_w,
                 const std::function<double(double, double)>& g, std::span<const double> breaks) {
  const Density1D& line = mu.line();
  std::vector<double> all(breaks.begin(), breaks.end());
  for (double k : mu.spec().kinks()) all.push_back(k);
  std::sort(all.begin(), all.end());
  auto at = [&](double angle) {
    return line.expect([&](double x) { return log_w(x, angle); }, [&](double x) { return g(x, angle); },
                       all);
  };
  if (!angular) return at(0.0);
  std::vector<double> angles = mu.angles();
  std::vector<double> weights = mu.angular_weights();
  if (angles.empty()) {
    angles = uniform_angles();
    weights.assign(angles.size(), 1.0 / angles.size());
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < angles.size(); ++k) sum += weights[k] * at(angles[k]);
  return sum;
}

double entropy(const PotentialMeasure& mu, const DensityPerturbation& pert) {
  // u log u - u + 1 with u = fhat^2 integrates to the entropy because
  // mu(u) = 1 under the same rule, and it vanishes to second order at u = 1.
  return mu_expect(
      mu, pert.def().angular, [](double, double) { return 0.0; },
      [&](double x, double a) {
        const double l = pert.log_density(x, a);
        if (l == -kInf) return 1.0;
        return l * std::exp(l) - std::expm1(l);
      },
      pert.def().breaks);
}

double energy(const PotentialMeasure& mu, const DensityPerturbation& pert, const WeightProfile* weight) {
  return mu_expect(
      mu, pert.def().angular,
      [&](double x, double a) { return pert.log_grad_sq(x, a) - pert.log_norm(); },
      [&](double x, double a) { return weight ? (*weight)(x, a) : 1.0; }, pert.def().breaks);
}

double abs_mean(const PotentialMeasure& mu, const DensityPerturbation& pert) {
  return mu_expect(
      mu, pert.def().angular,
      [&](double x, double a) { return pert.log_abs_f(x, a) - 0.5 * pert.log_norm(); },
      [](double, double) { return 1.0; }, pert.def().breaks);
}

double mass(const PotentialMeasure& mu, const DensityPerturbation& pert) {
  return mu_expect(
      mu, pert.def().angular, [&](double x, double a) { return pert.log_density(x, a); },
      [](double, double) { return 1.0; }, pert.def().breaks);
}

}  // namespace transineq
