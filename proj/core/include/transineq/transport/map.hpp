#pragma once

#include <array>
#include <iosfwd>

#include "transineq/measure/potential.hpp"
#include "transineq/transport/gauss.hpp"

namespace transineq {

/// Monotone map pushing mu to a (truncated) standard Gaussian.
///
/// One-dimensional: y(x) = Phi_delta^{-1}(phi(x)). Radial:
/// x -> ybar(|x|) x/|x| with ybar = Phi_0^{-1} o phi_theta; phi_theta does
/// not depend on the angle for the supported potentials, and the angular
/// oscillation of h enters through Ch().
class TransportMap {
 public:
  static TransportMap build_1d(const PotentialMeasure& mu);
  static TransportMap build_radial(const PotentialMeasure& mu);

  bool radial() const noexcept { return radial_; }
  const PotentialMeasure& measure() const noexcept { return mu_; }
  const GaussFunctions& gauss() const noexcept { return gauss_; }
  double Ch() const noexcept { return Ch_; }

  /// Forward map on the line, or ybar on radii.
  double y(double x) const;
  double y_inv(double t) const;
  double dy(double x) const;
  /// log of the reference Gaussian density at t (Phi_delta' or Phi_0').
  double log_reference_density(double t) const;

  /// Radial part phi_theta(r) and its r-derivative.
  double phi_theta(double r, double angle) const;
  double dphi_theta(double r, double angle) const;
  /// Image of a point of R^2 under the radial map.
  std::array<double, 2> map_point(double x1, double x2) const;

  void write_csv(std::ostream& os, double a, double b, int n) const;

 private:
  TransportMap(PotentialMeasure mu, GaussFunctions g, bool radial, double ch)
      : mu_(std::move(mu)), gauss_(g), radial_(radial), Ch_(ch) {}

  PotentialMeasure mu_;
  GaussFunctions gauss_;
  bool radial_;
  double Ch_;
};

inline TransportMap build_map_1d(const PotentialMeasure& mu) { return TransportMap::build_1d(mu); }
inline TransportMap build_map_radial(const PotentialMeasure& mu) {
  return TransportMap::build_radial(mu);
}

}  // namespace transineq
