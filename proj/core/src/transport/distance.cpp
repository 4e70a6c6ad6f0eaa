#include "transineq/transport/distance.hpp"

#include <algorithm>
#include <cmath>

#include "transineq/errors.hpp"
#include "transineq/measure/quadrature.hpp"

namespace transineq {
namespace {

double norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double euclid(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
  return std::sqrt(s);
}

void check_delta(double delta_exp) {
  if (!(delta_exp > 1.0 && delta_exp < 2.0)) {
    throw Error(ErrorCode::kInvalidArgument, "delta_exp must lie in (1, 2)");
  }
}

}  // namespace

const char* distance_mode_name(DistanceMode mode) {
  switch (mode) {
    case DistanceMode::kEuclidean:
      return "euclidean";
    case DistanceMode::kPullback:
      return "pullback";
    case DistanceMode::kWeightedGeodesic:
      return "weighted_geodesic";
    case DistanceMode::kRhoTilde:
      return "rho_tilde";
    case DistanceMode::kPowerComparison:
      return "power_comparison";
  }
  return "unknown";
}

DistanceEvaluator DistanceEvaluator::euclidean() { return DistanceEvaluator(); }

DistanceEvaluator DistanceEvaluator::pullback(std::shared_ptr<const TransportMap> map) {
  if (!map) throw Error(ErrorCode::kInvalidArgument, "pullback distance needs a map");
  DistanceEvaluator ev;
  ev.mode_ = DistanceMode::kPullback;
  ev.map_ = std::move(map);
  return ev;
}

DistanceEvaluator DistanceEvaluator::weighted_geodesic(std::shared_ptr<const WeightProfile> weight) {
  if (!weight) throw Error(ErrorCode::kInvalidArgument, "weighted geodesic needs a weight");
  DistanceEvaluator ev;
  ev.mode_ = DistanceMode::kWeightedGeodesic;
  ev.weight_ = std::move(weight);
  return ev;
}

DistanceEvaluator DistanceEvaluator::rho_tilde(double delta_exp) {
  check_delta(delta_exp);
  DistanceEvaluator ev;
  ev.mode_ = DistanceMode::kRhoTilde;
  ev.delta_exp_ = delta_exp;
  return ev;
}

DistanceEvaluator DistanceEvaluator::power_comparison(double delta_exp) {
  check_delta(delta_exp);
  DistanceEvaluator ev;
  ev.mode_ = DistanceMode::kPowerComparison;
  ev.delta_exp_ = delta_exp;
  return ev;
}

double DistanceEvaluator::operator()(double x, double y) const {
  const double a[1] = {x}, b[1] = {y};
  return (*this)(std::span<const double>(a), std::span<const double>(b));
}

double DistanceEvaluator::operator()(std::span<const double> x, std::span<const double> y) const {
  if (x.size() != y.size() || x.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "points must have equal non-zero dimension");
  }
  const double e = euclid(x, y);
  if (e == 0.0) return 0.0;
  const double outer = std::max(norm(x), norm(y));
  switch (mode_) {
    case DistanceMode::kEuclidean:
      return e;
    case DistanceMode::kPullback: {
      if (!map_->radial()) {
        if (x.size() != 1) throw Error(ErrorCode::kModeUnsupported, "one-dimensional map on a d-point");
        return std::abs(map_->y(x[0]) - map_->y(y[0]));
      }
      auto image = [&](std::span<const double> p) {
        std::vector<double> out(p.begin(), p.end());
        const double r = norm(p);
        const double s = r == 0.0 ? 0.0 : map_->y(r) / r;
        for (double& v : out) v *= s;
        return out;
      };
      const auto a = image(x), b = image(y);
      return euclid(a, b) / std::sqrt(map_->Ch());
    }
    case DistanceMode::kWeightedGeodesic: {
      if (x.size() != 1) {
        throw Error(ErrorCode::kModeUnsupported, "weighted geodesic is one-dimensional only");
      }
      const double lo = std::min(x[0], y[0]), hi = std::max(x[0], y[0]);
      const WeightProfile& w = *weight_;
      std::vector<double> breaks{lo, hi};
      if (lo < 0.0 && hi > 0.0) breaks.insert(breaks.begin() + 1, 0.0);
      quad::Options opt;
      opt.rel_tol = 1e-12;
      return quad::adaptive_piecewise([&](double s) { return 1.0 / std::sqrt(w(s)); }, breaks, opt)
          .value;
    }
    case DistanceMode::kRhoTilde:
      return e / std::pow(1.0 + outer, 1.0 - 0.5 * delta_exp_);
    case DistanceMode::kPowerComparison:
      return e * std::pow(1.0 + outer, (delta_exp_ - 1.0) / (2.0 - delta_exp_));
  }
  return e;
}

}  // namespace transineq
