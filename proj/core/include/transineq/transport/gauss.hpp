#pragma once

#include <limits>

namespace transineq {

/// log P(a, x) and log Q(a, x), the regularised incomplete gamma functions.
/// Series below x = a + 1/2, Lentz continued fraction above; the other
/// side is recovered with log1p so both stay accurate in their tails.
double log_gamma_p(double a, double x);
double log_gamma_q(double a, double x);

/// Standard normal tails in log space.
double log_normal_sf(double t);
double log_normal_cdf(double t);

/// Reference Gaussians: the standard normal restricted to [delta0, inf)
/// (Phi_delta) and the radial CDF of the d-dimensional standard Gaussian
/// (Phi_0(r) = P(d/2, r^2/2)).
class GaussFunctions {
 public:
  GaussFunctions(double left_endpoint, int dim);

  double left_endpoint() const noexcept { return delta0_; }
  int dim() const noexcept { return dim_; }
  /// c_delta = int_{delta0}^inf e^{-s^2/2} ds.
  double c_delta() const;
  double log_c_delta() const noexcept { return log_c_delta_; }

  double Phi_delta(double r) const;
  double log_Phi_delta(double r) const;
  /// log(1 - Phi_delta(r)).
  double log_Phi_delta_upper(double r) const;
  double dPhi_delta(double r) const;
  double log_dPhi_delta(double r) const;
  double Phi_delta_inv(double u) const;
  double Phi_delta_inv_log_lower(double log_u) const;
  double Phi_delta_inv_log_upper(double log_q) const;

  double Phi0(double r) const;
  double log_Phi0(double r) const;
  double log_Phi0_upper(double r) const;
  double dPhi0(double r) const;
  double log_dPhi0(double r) const;
  double Phi0_inv(double u) const;
  double Phi0_inv_log_lower(double log_u) const;
  double Phi0_inv_log_upper(double log_q) const;

 private:
  double delta0_;
  int dim_;
  double log_sf0_;  // log of the standard normal mass above delta0
  double log_c_delta_;
  double log_norm0_;  // log of 2^{d/2-1} Gamma(d/2)
};

inline GaussFunctions gauss_functions(double left_endpoint, int dim) {
  return GaussFunctions(left_endpoint, dim);
}

}  // namespace transineq
