#include "transineq/measure/potential.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>

#include "transineq/errors.hpp"

namespace transineq {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log_add_exp(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

}  // namespace

double PotentialSpec::V(double r) const {
  if (power) return -power->a * std::pow(std::abs(r), power->theta) + power->b;
  if (expression) return (*expression)(r);
  throw Error(ErrorCode::kInvalidArgument, "potential has neither a power family nor an expression");
}

double PotentialSpec::dV(double r) const {
  if (power) {
    if (r == 0.0) return 0.0;
    const double s = r > 0.0 ? 1.0 : -1.0;
    return -power->a * power->theta * std::pow(std::abs(r), power->theta - 1.0) * s;
  }
  if (expression) return expression->eval_with_derivative(r).second;
  throw Error(ErrorCode::kInvalidArgument, "potential has neither a power family nor an expression");
}

double PotentialSpec::angular(double angle) const {
  if (kind != MeasureKind::kRadialAngular) return 0.0;
  return epsilon * std::cos(angular_mode * angle);
}

double PotentialSpec::angular_derivative(double angle) const {
  if (kind != MeasureKind::kRadialAngular) return 0.0;
  return -epsilon * angular_mode * std::sin(angular_mode * angle);
}

std::vector<double> PotentialSpec::kinks() const {
  std::vector<double> k{0.0};
  if (std::isfinite(left_endpoint)) k.push_back(left_endpoint);
  return k;
}

PotentialSpec parse_potential(std::string_view text) {
  PotentialSpec spec;
  Expression e = Expression::parse(text);
  if (auto ap = e.affine_power(); ap && ap->coeff < 0.0 && ap->theta > 0.0) {
    spec.power = PowerFamily{-ap->coeff, ap->theta, ap->offset};
  }
  spec.expression = std::move(e);
  return spec;
}

PotentialSpec power_potential(double a, double theta, double b) {
  PotentialSpec spec;
  spec.power = PowerFamily{a, theta, b};
  return spec;
}

double sphere_area(int d) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d);
}

PotentialMeasure::PotentialMeasure(PotentialSpec spec, std::shared_ptr<const Density1D> line)
    : spec_(std::move(spec)), line_(std::move(line)) {
  if (!spec_.is_radial()) {
    log_Z_ = line_->log_mass();
    return;
  }
  double log_mean = 0.0;
  if (spec_.kind == MeasureKind::kRadialAngular) {
    angles_.resize(kAngularGridSize);
    angular_weights_.resize(kAngularGridSize);
    double gmax = -kInf, gmin = kInf, m = -kInf;
    for (int j = 0; j < kAngularGridSize; ++j) {
      angles_[j] = 2.0 * std::numbers::pi * j / kAngularGridSize;
      const double g = spec_.angular(angles_[j]);
      gmax = std::max(gmax, g);
      gmin = std::min(gmin, g);
      m = std::max(m, g);
    }
    double sum = 0.0;
    for (int j = 0; j < kAngularGridSize; ++j) {
      angular_weights_[j] = std::exp(spec_.angular(angles_[j]) - m);
      sum += angular_weights_[j];
    }
    for (double& w : angular_weights_) w /= sum;
    log_mean = m + std::log(sum / kAngularGridSize);
    Ch_ = std::exp(gmax - gmin);
  }
  log_Z_ = std::log(sphere_area(spec_.dim)) + line_->log_mass() + log_mean;
}

double PotentialMeasure::Z() const noexcept { return std::exp(log_Z_); }

double PotentialMeasure::log_h(double angle) const {
  return line_->log_mass() + spec_.angular(angle);
}

double PotentialMeasure::log_density(double x) const {
  if (x < spec_.left_endpoint) return -kInf;
  return spec_.V(x) - log_Z_;
}

double PotentialMeasure::log_density(double r, double angle) const {
  return spec_.V(r) + spec_.angular(angle) - log_Z_;
}

PotentialMeasure normalize(const PotentialSpec& spec) {
  if (spec.power) {
    if (!(spec.power->a > 0.0)) throw Error(ErrorCode::kInvalidArgument, "power family needs a > 0");
    if (!(spec.power->theta > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "power family needs theta > 0");
    }
  }
  if (spec.dim < 1) throw Error(ErrorCode::kInvalidArgument, "dimension must be >= 1");
  Density1D::Options opt;
  opt.breaks = spec.kinks();
  if (!spec.is_radial()) {
    if (spec.dim != 1) throw Error(ErrorCode::kInvalidArgument, "one_dim measures have dim = 1");
    auto line = std::make_shared<const Density1D>([spec](double x) { return spec.V(x); },
                                                  spec.left_endpoint, kInf, opt);
    return PotentialMeasure(spec, line);
  }
  if (spec.kind == MeasureKind::kRadialAngular && spec.dim != 2) {
    throw Error(ErrorCode::kInvalidArgument, "radial_angular is supported in d = 2 only");
  }
  const double dm1 = spec.dim - 1.0;
  auto line = std::make_shared<const Density1D>(
      [spec, dm1](double s) {
        if (dm1 == 0.0) return spec.V(s);
        return dm1 * std::log(s) + spec.V(s);
      },
      0.0, kInf, opt);
  return PotentialMeasure(spec, line);
}

double DistFunctions::radius(double x) const {
  const PotentialSpec& s = mu_->spec();
  if (s.is_radial()) return x;
  if (std::isfinite(s.left_endpoint)) return x - s.left_endpoint;
  return std::abs(x);
}

double DistFunctions::cdf(double x) const { return mu_->line().cdf(x); }

double DistFunctions::quantile(double u) const { return mu_->line().quantile(u); }

double DistFunctions::tail_bar(double s) const { return std::exp(log_tail_bar(s)); }

double DistFunctions::log_tail_bar(double s) const {
  if (s <= 0.0) return 0.0;
  const PotentialSpec& sp = mu_->spec();
  const Density1D& line = mu_->line();
  if (sp.is_radial()) return line.log_sf(s);
  if (std::isfinite(sp.left_endpoint)) return line.log_sf(sp.left_endpoint + s);
  return log_add_exp(line.log_cdf(-s), line.log_sf(s));
}

ExpMoment exp_moment(const PotentialMeasure& mu, double lambda, double p, MomentMode mode) {
  if (!(lambda > 0.0) || !(p > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "exp_moment needs lambda > 0 and p > 0");
  }
  const PotentialSpec& spec = mu.spec();
  DistFunctions df(mu);
  auto growth = [&](double rho) {
    return mode == MomentMode::kSingle ? lambda * std::pow(rho, p) : lambda * std::exp(p * rho);
  };
  ExpMoment out;
  out.finite = true;
  if (spec.power) {
    if (mode == MomentMode::kDouble) {
      out.finite = false;
    } else {
      out.finite = p < spec.power->theta || (p == spec.power->theta && lambda < spec.power->a);
    }
  } else {
    // Probe the log-integrand along growing radii.
    const bool two_sided = !spec.is_radial() && !std::isfinite(spec.left_endpoint);
    const double base = spec.is_radial() || two_sided ? 0.0 : spec.left_endpoint;
    double prev2 = -kInf, prev1 = -kInf, last = -kInf;
    for (int k = 3; k <= 24; ++k) {
      const double rho = std::ldexp(1.0, k);
      double v = spec.V(base + rho);
      if (two_sided) v = std::max(v, spec.V(-rho));
      if (spec.is_radial()) v += (spec.dim - 1.0) * std::log(rho);
      prev2 = prev1;
      prev1 = last;
      last = v + growth(rho);
      if (std::isnan(last)) last = kInf;
    }
    out.finite = !(last > prev1 && prev1 > prev2);
  }
  if (!out.finite) {
    out.value = kInf;
    out.log_value = kInf;
    return out;
  }
  const Density1D& line = mu.line();
  Density1D::Options opt;
  opt.breaks = spec.kinks();
  try {
    Density1D tilted(
        [&line, &df, growth](double x) { return line.log_f(x) + growth(df.radius(x)); }, line.lo(),
        line.hi(), opt);
    out.log_value = tilted.log_mass() - line.log_mass();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNonIntegrable) throw;
    out.finite = false;
    out.value = kInf;
    out.log_value = kInf;
    return out;
  }
  out.value = std::exp(out.log_value);
  return out;
}

GridMeasure discretize(const PotentialMeasure& mu, int n, GridScheme scheme) {
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "discretize needs n >= 2");
  const Density1D& line = mu.line();
  GridMeasure g;
  std::vector<double> pts(n), ms(n);
  if (scheme == GridScheme::kEqualMass) {
    for (int k = 0; k < n; ++k) {
      pts[k] = line.quantile((k + 0.5) / n);
      ms[k] = 1.0 / n;
    }
  } else {
    const double a = line.quantile(1e-6), b = line.quantile(1.0 - 1e-6);
    const double h = (b - a) / (n - 1);
    double sum = 0.0;
    for (int k = 0; k < n; ++k) {
      pts[k] = a + k * h;
      ms[k] = line.pdf(pts[k]) * h * ((k == 0 || k == n - 1) ? 0.5 : 1.0);
      sum += ms[k];
    }
    for (double& m : ms) m /= sum;
    g.spacing = h;
  }
  if (mu.spec().kind != MeasureKind::kRadialAngular) {
    g.points = std::move(pts);
    g.masses = std::move(ms);
    if (mu.spec().is_radial()) g.angles.assign(g.points.size(), 0.0);
    return g;
  }
  const auto& angles = mu.angles();
  const auto& weights = mu.angular_weights();
  for (std::size_t j = 0; j < angles.size(); ++j) {
    for (int k = 0; k < n; ++k) {
      g.points.push_back(pts[k]);
      g.angles.push_back(angles[j]);
      g.masses.push_back(ms[k] * weights[j]);
    }
  }
  return g;
}

void GridMeasure::write_csv(std::ostream& os) const {
  const auto old = os.precision(17);
  if (polar()) {
    os << "r,angle,mass\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
      os << points[i] << ',' << angles[i] << ',' << masses[i] << '\n';
    }
  } else {
    os << "point,mass\n";
    for (std::size_t i = 0; i < points.size(); ++i) os << points[i] << ',' << masses[i] << '\n';
  }
  os.precision(old);
}

}  // namespace transineq
