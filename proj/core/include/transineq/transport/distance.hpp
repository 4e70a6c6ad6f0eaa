#pragma once

#include <memory>
#include <span>
#include <vector>

#include "transineq/transport/map.hpp"
#include "transineq/transport/weight.hpp"

namespace transineq {

enum class DistanceMode { kEuclidean, kPullback, kWeightedGeodesic, kRhoTilde, kPowerComparison };

const char* distance_mode_name(DistanceMode mode);

/// Distances between points of R (size-1 spans) or R^d.
///
/// pullback: |Y(x1) - Y(x2)| after the transport map, scaled by Ch^{-1/2}
/// in the radial case. weighted_geodesic: |int_x^y alpha^{-1/2}| on the
/// line. rho_tilde: |x - y| / (1 + |x| v |y|)^{1 - delta/2}.
/// power_comparison: |x - y| (1 + |x| v |y|)^{(delta - 1)/(2 - delta)}.
class DistanceEvaluator {
 public:
  static DistanceEvaluator euclidean();
  static DistanceEvaluator pullback(std::shared_ptr<const TransportMap> map);
  static DistanceEvaluator weighted_geodesic(std::shared_ptr<const WeightProfile> weight);
  static DistanceEvaluator rho_tilde(double delta_exp);
  static DistanceEvaluator power_comparison(double delta_exp);

  DistanceMode mode() const noexcept { return mode_; }
  double delta_exp() const noexcept { return delta_exp_; }
  const TransportMap* map() const noexcept { return map_.get(); }
  const WeightProfile* weight() const noexcept { return weight_.get(); }

  double operator()(std::span<const double> x, std::span<const double> y) const;
  double operator()(double x, double y) const;

 private:
  DistanceMode mode_ = DistanceMode::kEuclidean;
  double delta_exp_ = 1.5;
  std::shared_ptr<const TransportMap> map_;
  std::shared_ptr<const WeightProfile> weight_;
};

inline double distance(const DistanceEvaluator& ev, std::span<const double> x,
                       std::span<const double> y) {
  return ev(x, y);
}
inline double distance(const DistanceEvaluator& ev, double x, double y) { return ev(x, y); }

}  // namespace transineq
