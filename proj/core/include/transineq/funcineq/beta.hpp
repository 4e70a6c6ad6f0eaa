#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "transineq/measure/potential.hpp"

namespace transineq {

/// Decreasing super-Poincare rate beta(r).
///
/// exp_power: beta(r) = exp[c (1 + r^{-1/delta})]. table: values on an
/// increasing r grid, interpolated linearly in (log r, log beta).
class BetaProfile {
 public:
  enum class Form { kExpPower, kTable };

  static BetaProfile exp_power(double c, double delta);
  static BetaProfile table(std::vector<double> r, std::vector<double> beta);

  Form form() const noexcept { return form_; }
  double c() const noexcept { return c_; }
  double delta() const noexcept { return delta_; }
  const std::vector<double>& r_grid() const noexcept { return r_; }
  const std::vector<double>& values() const noexcept { return beta_; }

  double operator()(double r) const;
  double log_beta(double r) const;
  /// inf{t >= 0 : beta(t) <= s}; +inf when beta never drops to s.
  double inverse(double s) const;
  /// Same, with s given as log s.
  double inverse_log(double log_s) const;
  /// eta(s) = log(2s) min(1, beta^{-1}(s/2)) evaluated at s = e^L.
  double eta_log(double L) const;
  double eta(double s) const { return eta_log(std::log(s)); }

  /// factor * beta, for either form.
  BetaProfile scaled(double factor) const;
  double log_scale() const noexcept { return log_scale_; }

 private:
  Form form_ = Form::kExpPower;
  double c_ = 1.0;
  double delta_ = 1.5;
  std::vector<double> r_;
  std::vector<double> beta_;
  std::vector<double> log_r_;
  std::vector<double> log_beta_;
  double log_scale_ = 0.0;
};

struct MomentsBetaOptions {
  double K = 0.0;
  double c0 = 1.0;
  int n_s = 40;
  bool refine = true;
  double s_lo = 1e-4;
  double s_hi = 1e4;
};

/// beta(r) = c0 inf_{0<r1<r} r1 inf_{s>0} (1/s) h(2K + 12/s) e^{s/r1 - 1}
/// with h(q) = mu(e^{q rho^2}), tabulated on r_grid. The r1 infimum is
/// taken in closed form (r1 = s when s <= r, else r1 = r), leaving a
/// log-spaced search in s refined by golden section.
BetaProfile beta_from_moments(const PotentialMeasure& mu, std::span<const double> r_grid,
                              const MomentsBetaOptions& opt = {});

/// Smallest c with log beta_table(r) <= c (1 + r^{-1/delta}) on the grid
/// points inside [r_lo, r_hi].
double fit_exp_power_c(const BetaProfile& table, double delta, double r_lo, double r_hi);

}  // namespace transineq
