#include "transineq/transport/weight.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "transineq/errors.hpp"

namespace transineq {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// d/dangle of phi_theta(r) by central differences, halving the step until
// two successive estimates agree.
double angular_gradient(const TransportMap& map, double r, double angle) {
  double step = 2.0 * std::numbers::pi / kAngularGridSize;
  auto diff = [&](double h) {
    return (map.phi_theta(r, angle + h) - map.phi_theta(r, angle - h)) / (2.0 * h);
  };
  double prev = diff(step);
  for (int k = 0; k < 20; ++k) {
    step *= 0.5;
    const double cur = diff(step);
    if (std::abs(cur - prev) <= 1e-6 * std::max(1.0, std::abs(cur))) return cur;
    prev = cur;
  }
  return prev;
}

}  // namespace

const char* weight_tag_name(WeightTag tag) {
  switch (tag) {
    case WeightTag::kThm411:
      return "thm411";
    case WeightTag::kThm412:
      return "thm412";
    case WeightTag::kThm11:
      return "thm11";
    case WeightTag::kCor413Envelope:
      return "cor413";
  }
  return "unknown";
}

void WeightProfile::write_csv(std::ostream& os, double a, double b, int n) const {
  const auto old = os.precision(17);
  os << "x,alpha\n";
  for (int i = 0; i < n; ++i) {
    const double x = n == 1 ? a : a + (b - a) * i / (n - 1);
    os << x << ',' << (*this)(x) << '\n';
  }
  os.precision(old);
}

std::vector<double> default_eps_grid() {
  std::vector<double> g;
  for (int k = -6; k <= 6; ++k) g.push_back(std::ldexp(1.0, k));
  return g;
}

WeightProfile weight_1d(std::shared_ptr<const TransportMap> map) {
  if (map->radial()) throw Error(ErrorCode::kInvalidArgument, "weight_1d needs a one-dimensional map");
  auto eval = [map](double x, double) {
    const Density1D& line = map->measure().line();
    const double xc = std::max(x, line.lo());
    return std::exp(2.0 * (map->log_reference_density(map->y(xc)) - line.log_pdf(xc)));
  };
  return WeightProfile(WeightTag::kThm411, eval);
}

WeightProfile weight_1d(const PotentialMeasure& mu) {
  return weight_1d(std::make_shared<const TransportMap>(TransportMap::build_1d(mu)));
}

WeightProfile weight_radial(std::shared_ptr<const TransportMap> map, std::vector<double> eps_grid) {
  if (!map->radial()) throw Error(ErrorCode::kInvalidArgument, "weight_radial needs a radial map");
  if (eps_grid.empty()) throw Error(ErrorCode::kInvalidArgument, "epsilon grid must be non-empty");
  for (double e : eps_grid) {
    if (!(e > 0.0)) throw Error(ErrorCode::kInvalidArgument, "epsilon grid entries must be > 0");
  }
  const PotentialMeasure& mu = map->measure();
  const int d = mu.spec().dim;
  // Below kRadialMin both ratios approach 1 / k0^2 with ybar ~ k0 r.
  const double log_k0d = (0.5 * d - 1.0) * std::numbers::ln2 + std::lgamma(0.5 * d) +
                         mu.spec().V(0.0) - mu.line().log_mass();
  const double origin = map->Ch() * std::exp(-2.0 * log_k0d / d);
  auto eval = [map, eps_grid, origin](double r, double angle) {
    r = std::abs(r);
    if (r < kRadialMin) return origin;
    const Density1D& line = map->measure().line();
    const double yb = map->y(r);
    const double dphi_log = line.log_pdf(r);
    const double ratio = (r / yb) * (r / yb);
    const double A = std::exp(2.0 * (map->log_reference_density(yb) - dphi_log));
    const double G = angular_gradient(*map, r, angle);
    if (G == 0.0) return map->Ch() * std::max(ratio, A);
    const double g2 = G * G / std::exp(2.0 * dphi_log) / (yb * yb);
    double best = kInf;
    for (double e : eps_grid) best = std::min(best, std::max((1.0 + e) * ratio, A + (1.0 + 1.0 / e) * g2));
    return map->Ch() * best;
  };
  return WeightProfile(WeightTag::kThm412, eval, std::move(eps_grid));
}

WeightProfile weight_radial(const PotentialMeasure& mu, std::vector<double> eps_grid) {
  return weight_radial(std::make_shared<const TransportMap>(TransportMap::build_radial(mu)),
                       std::move(eps_grid));
}

WeightProfile weight_thm11(const PotentialMeasure& mu, const BetaProfile& beta) {
  // eta on a log grid t = e^L in [1, 1e16] plus its corner points.
  const double L_max = 16.0 * std::numbers::ln10;
  constexpr int kGrid = 4000;
  std::vector<double> Ls;
  for (int i = 0; i <= kGrid; ++i) Ls.push_back(L_max * i / kGrid);
  if (beta.form() == BetaProfile::Form::kExpPower) {
    const double c = beta.c() + beta.log_scale();
    for (double L : {std::numbers::ln2 + c, std::numbers::ln2 + 2.0 * c}) {
      if (L > 0.0 && L < L_max) Ls.push_back(L);
    }
  }
  std::sort(Ls.begin(), Ls.end());
  std::vector<double> eta(Ls.size());
  for (std::size_t i = 0; i < Ls.size(); ++i) eta[i] = beta.eta_log(Ls[i]);

  const double e14 = beta.eta_log(14.0 * std::numbers::ln10);
  const double e15 = beta.eta_log(15.0 * std::numbers::ln10);
  const double e16 = beta.eta_log(L_max);
  if (!std::isfinite(e16) || (e16 > e15 && e15 > e14)) {
    throw Error(ErrorCode::kEtaUnbounded, "eta still grows over t in [1e14, 1e16]");
  }
  // Suffix maxima give sup over t >= threshold directly.
  std::vector<double> suffix(eta.size());
  double run = 0.0;
  for (std::size_t i = eta.size(); i-- > 0;) {
    run = std::max(run, eta[i]);
    suffix[i] = run;
  }
  const double sup_eta = suffix.front();
  auto owned = std::make_shared<const PotentialMeasure>(mu);
  const bool radial = mu.spec().is_radial();
  auto eval = [owned, radial, Ls, suffix, beta](double x, double) {
    const DistFunctions df(*owned);
    const double s = radial ? std::abs(x) : df.radius(x);
    const double L0 = s - 2.0 <= 0.0 ? 0.0 : -df.log_tail_bar(s - 2.0);
    if (!(L0 < Ls.back())) return beta.eta_log(L0);
    const auto it = std::lower_bound(Ls.begin(), Ls.end(), L0);
    const std::size_t i = static_cast<std::size_t>(it - Ls.begin());
    return std::max(beta.eta_log(L0), suffix[i]);
  };
  WeightProfile w(WeightTag::kThm11, eval);
  w.set_sup_bound(sup_eta);
  return w;
}

WeightProfile weight_cor413(const PotentialMeasure& mu, double c, double theta) {
  if (!(c > 0.0)) throw Error(ErrorCode::kInvalidArgument, "envelope constant must be > 0");
  auto owned = std::make_shared<const PotentialMeasure>(mu);
  const bool radial = mu.spec().is_radial();
  auto eval = [owned, radial, c, theta](double x, double) {
    const double r = radial ? std::abs(x) : DistFunctions(*owned).radius(x);
    return c * std::pow(1.0 + r, 2.0 - theta);
  };
  return WeightProfile(WeightTag::kCor413Envelope, eval);
}

}  // namespace transineq
