#include "transineq/ot/cost.hpp"

#include <cmath>

#include "transineq/errors.hpp"

namespace transineq {

const char* cost_tag_name(CostTag tag) {
  switch (tag) {
    case CostTag::kPowerP:
      return "power_p";
    case CostTag::kPullbackSq:
      return "pullback_sq";
    case CostTag::kRhoTildeSq:
      return "rho_tilde_sq";
    case CostTag::kLaD:
      return "L_aD";
    case CostTag::kExpCost:
      return "exp_cost";
  }
  return "unknown";
}

CostFn CostFn::power(double p, DistanceEvaluator base) {
  if (!(p >= 1.0)) throw Error(ErrorCode::kNonConvexCost, "power cost needs p >= 1");
  CostFn c;
  c.tag_ = CostTag::kPowerP;
  c.p_ = p;
  c.base_ = std::move(base);
  return c;
}

CostFn CostFn::pullback_sq(std::shared_ptr<const TransportMap> map) {
  CostFn c;
  c.tag_ = CostTag::kPullbackSq;
  c.base_ = DistanceEvaluator::pullback(std::move(map));
  return c;
}

CostFn CostFn::rho_tilde_sq(double delta_exp) {
  CostFn c;
  c.tag_ = CostTag::kRhoTildeSq;
  c.delta_exp_ = delta_exp;
  c.base_ = DistanceEvaluator::rho_tilde(delta_exp);
  return c;
}

CostFn CostFn::l_aD(double a, double delta_exp) {
  if (!(a > 0.0)) throw Error(ErrorCode::kInvalidArgument, "L_aD needs a > 0");
  if (!(delta_exp >= 1.0)) throw Error(ErrorCode::kNonConvexCost, "L_aD is not convex for delta < 1");
  CostFn c;
  c.tag_ = CostTag::kLaD;
  c.a_ = a;
  c.delta_exp_ = delta_exp;
  return c;
}

CostFn CostFn::exp_cost(double c1, DistanceEvaluator base) {
  if (!(c1 >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "exp_cost needs c1 >= 0");
  CostFn c;
  c.tag_ = CostTag::kExpCost;
  c.c1_ = c1;
  c.base_ = std::move(base);
  return c;
}

double CostFn::of_distance(double d) const {
  switch (tag_) {
    case CostTag::kPowerP:
      return p_ == 2.0 ? d * d : std::pow(d, p_);
    case CostTag::kPullbackSq:
    case CostTag::kRhoTildeSq:
      return d * d;
    case CostTag::kLaD: {
      if (d <= a_) return 0.5 * d * d;
      const double D = delta_exp_;
      return std::pow(a_, 2.0 - D) / D * std::pow(d, D) + a_ * a_ * (D - 2.0) / (2.0 * D);
    }
    case CostTag::kExpCost:
      return d * d * std::exp(c1_ * d);
  }
  return d * d;
}

}  // namespace transineq
