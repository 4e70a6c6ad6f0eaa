#pragma once

#include <functional>
#include <iosfwd>
#include <limits>
#include <memory>
#include <vector>

#include "transineq/funcineq/beta.hpp"
#include "transineq/transport/map.hpp"

namespace transineq {

enum class WeightTag { kThm411, kThm412, kThm11, kCor413Envelope };

const char* weight_tag_name(WeightTag tag);

/// alpha in mu(f^2 log f^2) <= C mu(alpha |grad f|^2).
///
/// One-dimensional profiles take x; radial ones take (r, angle). Profiles
/// built from a distance to o (thm11, cor413) take the point and apply
/// rho(o, .) themselves.
class WeightProfile {
 public:
  using Eval = std::function<double(double, double)>;

  WeightProfile(WeightTag tag, Eval eval, std::vector<double> eps_grid = {})
      : tag_(tag), eval_(std::move(eval)), eps_grid_(std::move(eps_grid)) {}

  WeightTag tag() const noexcept { return tag_; }
  double operator()(double x) const { return eval_(x, 0.0); }
  double operator()(double r, double angle) const { return eval_(r, angle); }
  const std::vector<double>& eps_grid() const noexcept { return eps_grid_; }
  /// Largest value seen when the profile was built (thm11: sup eta).
  double sup_bound() const noexcept { return sup_bound_; }
  void set_sup_bound(double v) { sup_bound_ = v; }

  void write_csv(std::ostream& os, double a, double b, int n) const;

 private:
  WeightTag tag_;
  Eval eval_;
  std::vector<double> eps_grid_;
  double sup_bound_ = std::numeric_limits<double>::infinity();
};

/// {2^k : k = -6..6}.
std::vector<double> default_eps_grid();

inline constexpr double kRadialMin = 1e-6;

WeightProfile weight_1d(std::shared_ptr<const TransportMap> map);
WeightProfile weight_1d(const PotentialMeasure& mu);
WeightProfile weight_radial(std::shared_ptr<const TransportMap> map,
                            std::vector<double> eps_grid = default_eps_grid());
WeightProfile weight_radial(const PotentialMeasure& mu,
                            std::vector<double> eps_grid = default_eps_grid());
/// alpha(s) = sup_{t >= 1/Phibar(s-2)} eta(t) with Phibar(negative) = 1.
/// Throws EtaUnbounded when eta still grows across the last two decades of
/// t in [1, 1e16].
WeightProfile weight_thm11(const PotentialMeasure& mu, const BetaProfile& beta);
/// alpha(r) = c (1 + r)^{2 - theta}, r = rho(o, x).
WeightProfile weight_cor413(const PotentialMeasure& mu, double c, double theta);

}  // namespace transineq
