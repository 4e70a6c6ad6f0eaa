#include "transineq/funcineq/deviation.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "transineq/errors.hpp"

namespace transineq {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Smallest x in [lo, hi] with g(x) >= t for increasing g, to relative width 1e-15.
template <class G>
double bisect_up(const G& g, double lo, double hi, double t) {
  for (int it = 0; it < 400 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) >= t) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace

double rate_inverse(const std::function<double(double)>& rate, double t) {
  if (rate(0.0) >= t) return 0.0;
  double hi = 1.0;
  while (rate(hi) < t) {
    hi *= 2.0;
    if (hi > 1e300) return kInf;
  }
  return bisect_up(rate, 0.0, hi, t);
}

DeviationBound deviation_bound(const std::function<double(double)>& rate, double mu_A, double r) {
  if (!(mu_A > 0.0 && mu_A <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "mu(A) must lie in (0, 1]");
  DeviationBound out;
  const double shift = rate(-std::log(mu_A));
  if (!(r > shift)) {
    out.radius_too_small = true;
    out.bound = 1.0;
    return out;
  }
  out.bound = std::exp(-rate_inverse(rate, r - shift));
  return out;
}

DeviationPoint deviation_point(const PotentialMeasure& mu, const DeviationSpec& spec, double r) {
  if (mu.spec().is_radial()) {
    throw Error(ErrorCode::kModeUnsupported, "deviation events are half-lines of a one-dimensional measure");
  }
  if (!spec.rate) throw Error(ErrorCode::kInvalidArgument, "deviation spec needs a rate");
  if (!(r >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "r must be >= 0");
  const Density1D& line = mu.line();
  const double a = spec.event.a;
  const bool lower = spec.event.side == HalfLine::Side::kLower;
  DeviationPoint p;
  p.r = r;
  p.mu_A = lower ? std::exp(line.log_cdf(a)) : std::exp(line.log_sf(a));
  if (!(p.mu_A > 0.0 && p.mu_A < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "mu(A) must lie strictly between 0 and 1");
  }
  // The distance to a half-line is the distance to its endpoint and grows
  // monotonically away from it, so A_r is the half-line beyond x_r.
  const double sgn = lower ? 1.0 : -1.0;
  auto reach = [&](double t) { return spec.dist(a, a + sgn * t); };
  double hi = 1.0;
  while (reach(hi) < r && hi < 1e12) hi *= 2.0;
  if (reach(hi) < r) {
    p.x_r = sgn * kInf;
    p.mu_Ar = 0.0;
  } else {
    const double t = bisect_up(reach, 0.0, hi, r);
    p.x_r = a + sgn * t;
    p.mu_Ar = lower ? std::exp(line.log_sf(p.x_r)) : std::exp(line.log_cdf(p.x_r));
  }
  p.bound = deviation_bound(spec.rate, p.mu_A, r);
  return p;
}

InequalityReport deviation_check(const PotentialMeasure& mu, const DeviationSpec& spec,
                                 std::span<const double> r_grid) {
  InequalityReport rep("deviation", 1.0);
  for (double r : r_grid) {
    const DeviationPoint p = deviation_point(mu, spec, r);
    char buf[48];
    std::snprintf(buf, sizeof buf, "r=%.6g%s", r, p.bound.radius_too_small ? "(vacuous)" : "");
    rep.add(buf, r, p.mu_Ar, p.bound.bound);
  }
  return rep;
}

}  // namespace transineq
