#pragma once

#include <functional>
#include <span>

#include "transineq/funcineq/report.hpp"
#include "transineq/measure/potential.hpp"
#include "transineq/transport/distance.hpp"

namespace transineq {

/// Event A = (-inf, a] (kLower) or [a, inf) (kUpper) on the line.
struct HalfLine {
  enum class Side { kLower, kUpper };
  Side side = Side::kLower;
  double a = 0.0;
};

struct DeviationSpec {
  /// Increasing rate Phi with Phi(0) >= 0.
  std::function<double(double)> rate;
  HalfLine event;
  DistanceEvaluator dist = DistanceEvaluator::euclidean();
};

/// Phi^{-1}(t) = inf{s >= 0 : Phi(s) >= t}.
double rate_inverse(const std::function<double(double)>& rate, double t);

struct DeviationBound {
  double bound = 1.0;
  /// Set when r <= Phi(log 1/mu(A)); the bound is then the vacuous 1.
  bool radius_too_small = false;
};

/// exp[-Phi^{-1}(r - Phi(log 1/mu(A)))].
DeviationBound deviation_bound(const std::function<double(double)>& rate, double mu_A, double r);

struct DeviationPoint {
  double r = 0.0;
  double mu_A = 0.0;
  /// mu(A_r) with A_r = {x : rho(x, y) >= r for every y in A}.
  double mu_Ar = 0.0;
  /// Boundary of A_r (a half-line on the other side of a).
  double x_r = 0.0;
  DeviationBound bound;
};

/// mu(A) and mu(A_r) computed exactly on a one-dimensional measure.
DeviationPoint deviation_point(const PotentialMeasure& mu, const DeviationSpec& spec, double r);

/// lhs = mu(A_r), rhs = bound for every r; ids are "r=value".
InequalityReport deviation_check(const PotentialMeasure& mu, const DeviationSpec& spec,
                                 std::span<const double> r_grid);

}  // namespace transineq
