#pragma once

#include <memory>
#include <span>

#include "transineq/transport/distance.hpp"

namespace transineq {

enum class CostTag { kPowerP, kPullbackSq, kRhoTildeSq, kLaD, kExpCost };

const char* cost_tag_name(CostTag tag);

/// Transport cost c(x, y) = g(d(x, y)) for a base distance d.
///
/// power_p: d^p with d Euclidean (or any evaluator passed in).
/// pullback_sq: squared pullback distance of a transport map.
/// rho_tilde_sq: squared comparison distance.
/// L_aD: |x - y|^2 / 2 for |x - y| <= a, else
///       a^{2-delta} |x - y|^delta / delta + a^2 (delta - 2) / (2 delta).
/// exp_cost: d^2 e^{c1 d}, used as a raw cost without a root.
class CostFn {
 public:
  static CostFn power(double p, DistanceEvaluator base = DistanceEvaluator::euclidean());
  static CostFn pullback_sq(std::shared_ptr<const TransportMap> map);
  static CostFn rho_tilde_sq(double delta_exp);
  static CostFn l_aD(double a, double delta_exp);
  static CostFn exp_cost(double c1, DistanceEvaluator base = DistanceEvaluator::euclidean());

  CostTag tag() const noexcept { return tag_; }
  double p() const noexcept { return p_; }
  double a() const noexcept { return a_; }
  double delta_exp() const noexcept { return delta_exp_; }
  double c1() const noexcept { return c1_; }
  const DistanceEvaluator& base() const noexcept { return base_; }

  /// Cost as a function of the base distance.
  double of_distance(double d) const;
  double operator()(double x, double y) const { return of_distance(base_(x, y)); }
  double operator()(std::span<const double> x, std::span<const double> y) const {
    return of_distance(base_(x, y));
  }

 private:
  CostTag tag_ = CostTag::kPowerP;
  double p_ = 2.0;
  double a_ = 1.0;
  double delta_exp_ = 1.5;
  double c1_ = 0.0;
  DistanceEvaluator base_;
};

}  // namespace transineq
