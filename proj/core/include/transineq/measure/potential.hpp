#pragma once

#include <iosfwd>
#include <limits>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "transineq/measure/density1d.hpp"
#include "transineq/measure/expression.hpp"

namespace transineq {

enum class MeasureKind { kOneDim, kRadial, kRadialAngular };

/// V(x) = -a |x|^theta + b.
struct PowerFamily {
  double a = 1.0;
  double theta = 2.0;
  double b = 0.0;
};

/// Description of mu(dx) = e^{V(x)} dx before normalisation.
///
/// one_dim lives on [left_endpoint, inf); radial and radial_angular on R^d
/// in polar form. For radial_angular (d = 2 only) the potential is
/// V(r) + epsilon * cos(angular_mode * angle).
struct PotentialSpec {
  MeasureKind kind = MeasureKind::kOneDim;
  int dim = 1;
  double left_endpoint = -std::numeric_limits<double>::infinity();
  std::optional<PowerFamily> power;
  std::optional<Expression> expression;
  double epsilon = 0.0;
  int angular_mode = 1;

  /// Radial (or one-dimensional) part of the potential.
  double V(double r) const;
  double dV(double r) const;
  /// Angular perturbation epsilon * g(angle) and its derivative.
  double angular(double angle) const;
  double angular_derivative(double angle) const;
  /// Points where V may fail to be smooth.
  std::vector<double> kinks() const;
  bool is_radial() const { return kind != MeasureKind::kOneDim; }
};

/// Parses a potential in `r`. Recognises c * r^theta + b with c < 0 and
/// stores it as the power family (|x|^theta in one dimension).
PotentialSpec parse_potential(std::string_view text);
PotentialSpec power_potential(double a, double theta, double b = 0.0);

inline constexpr int kAngularGridSize = 64;

/// Normalised measure. For radial kinds `line()` is the law of |x| along a
/// ray (density proportional to s^{d-1} e^{V(s)}); the angular factor
/// e^{epsilon g} multiplies h(theta) but does not change phi_theta.
class PotentialMeasure {
 public:
  PotentialMeasure(PotentialSpec spec, std::shared_ptr<const Density1D> line);

  const PotentialSpec& spec() const noexcept { return spec_; }
  const Density1D& line() const noexcept { return *line_; }
  std::shared_ptr<const Density1D> line_ptr() const noexcept { return line_; }
  double Z() const noexcept;
  double log_Z() const noexcept { return log_Z_; }

  /// Angular grid (radial_angular only) and normalised angular weights.
  const std::vector<double>& angles() const noexcept { return angles_; }
  const std::vector<double>& angular_weights() const noexcept { return angular_weights_; }
  /// log h(theta) = log int_0^inf s^{d-1} e^{V(s theta)} ds.
  double log_h(double angle) const;
  /// sup h / inf h over the angular grid (1 for radial potentials).
  double Ch() const noexcept { return Ch_; }

  /// Density of mu at a point (1-D: x; radial: (r, angle)).
  double log_density(double x) const;
  double log_density(double r, double angle) const;

  Quadrature1D quadrature() const { return line_->quadrature(); }

 private:
  PotentialSpec spec_;
  std::shared_ptr<const Density1D> line_;
  std::vector<double> angles_;
  std::vector<double> angular_weights_;
  double log_Z_ = 0.0;
  double Ch_ = 1.0;
};

PotentialMeasure normalize(const PotentialSpec& spec);

/// Unit sphere area 2 pi^{d/2} / Gamma(d/2).
double sphere_area(int d);

/// phi, its quantile, and the tail function Phibar(s) = mu(rho(o, .) >= s)
/// with o the origin (one_dim on R and radial) or the left endpoint.
class DistFunctions {
 public:
  explicit DistFunctions(const PotentialMeasure& mu) : mu_(&mu) {}

  double cdf(double x) const;
  double quantile(double u) const;
  double tail_bar(double s) const;
  double log_tail_bar(double s) const;
  /// rho(o, x) for a one-dimensional point or a radius.
  double radius(double x) const;

 private:
  const PotentialMeasure* mu_;
};

inline DistFunctions dist_functions(const PotentialMeasure& mu) { return DistFunctions(mu); }

enum class MomentMode { kSingle, kDouble };

struct ExpMoment {
  double value = 0.0;
  double log_value = 0.0;
  bool finite = true;
};

/// mu(exp[lambda rho^p]) (single) or mu(exp[lambda e^{p rho}]) (double).
ExpMoment exp_moment(const PotentialMeasure& mu, double lambda, double p,
                     MomentMode mode = MomentMode::kSingle);

enum class GridScheme { kEqualMass, kEqualSpace };

/// Discrete measure. One-dimensional grids use `points` only; polar grids
/// store radii in `points` and angles in `angles`.
struct GridMeasure {
  std::vector<double> points;
  std::vector<double> angles;
  std::vector<double> masses;
  double spacing = 0.0;

  bool polar() const noexcept { return !angles.empty(); }
  std::size_t size() const noexcept { return points.size(); }
  void write_csv(std::ostream& os) const;
};

GridMeasure discretize(const PotentialMeasure& mu, int n, GridScheme scheme);

}  // namespace transineq
