#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "transineq/measure/potential.hpp"
#include "transineq/transport/weight.hpp"

namespace transineq {

/// A test function f with analytic gradient. Points are x (one-dimensional)
/// or (r, angle); one-dimensional members ignore the angle.
struct PerturbationDef {
  using Fn = std::function<double(double, double)>;

  std::string family;
  std::string id;
  double param = 0.0;
  Fn f;
  Fn df_r;
  Fn df_angle;  // empty for members without angular dependence
  /// Optional log forms for members whose values overflow (tilts).
  Fn log_abs_f;
  Fn log_grad_sq;
  /// Kinks of f.
  std::vector<double> breaks;
  bool angular = false;
};

/// f^2 mu renormalised to a probability measure: fhat = f / sqrt(mu(f^2)).
class DensityPerturbation {
 public:
  DensityPerturbation(const PotentialMeasure& mu, PerturbationDef def);

  const PerturbationDef& def() const noexcept { return def_; }
  const std::string& id() const noexcept { return def_.id; }
  double param() const noexcept { return def_.param; }
  /// log mu(f^2) before renormalisation.
  double log_norm() const noexcept { return log_norm_; }

  double log_abs_f(double x, double angle = 0.0) const;
  /// log |grad f|^2 with the angular part divided by r^2.
  double log_grad_sq(double x, double angle = 0.0) const;
  /// log fhat^2.
  double log_density(double x, double angle = 0.0) const {
    return 2.0 * log_abs_f(x, angle) - log_norm_;
  }

 private:
  PerturbationDef def_;
  double log_norm_ = 0.0;
};

/// mu(exp(log_w) g) with the angular average taken for angular members.
double mu_expect(const PotentialMeasure& mu, bool angular,
                 const std::function<double(double, double)>& log_w,
                 const std::function<double(double, double)>& g,
                 std::span<const double> breaks = {});

/// mu(fhat^2 log fhat^2) with 0 log 0 = 0.
double entropy(const PotentialMeasure& mu, const DensityPerturbation& pert);
/// mu(alpha |grad fhat|^2); a null weight means alpha = 1.
double energy(const PotentialMeasure& mu, const DensityPerturbation& pert,
              const WeightProfile* weight = nullptr);
/// mu(|fhat|).
double abs_mean(const PotentialMeasure& mu, const DensityPerturbation& pert);
/// mu(fhat^2); 1 up to quadrature error.
double mass(const PotentialMeasure& mu, const DensityPerturbation& pert);

}  // namespace transineq
