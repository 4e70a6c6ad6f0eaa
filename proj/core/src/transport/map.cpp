#include "transineq/transport/map.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "transineq/errors.hpp"

namespace transineq {

TransportMap TransportMap::build_1d(const PotentialMeasure& mu) {
  if (mu.spec().is_radial()) {
    throw Error(ErrorCode::kInvalidArgument, "build_map_1d needs a one_dim measure");
  }
  return TransportMap(mu, GaussFunctions(mu.spec().left_endpoint, 1), false, 1.0);
}

TransportMap TransportMap::build_radial(const PotentialMeasure& mu) {
  if (!mu.spec().is_radial()) {
    throw Error(ErrorCode::kInvalidArgument, "build_map_radial needs a radial measure");
  }
  if (!(mu.Ch() <= 1e6)) {
    throw Error(ErrorCode::kAngularUnbounded, "h ratio over the angular grid exceeds 1e6");
  }
  return TransportMap(mu, GaussFunctions(0.0, mu.spec().dim), true, mu.Ch());
}

double TransportMap::y(double x) const {
  const Density1D& line = mu_.line();
  if (x <= line.lo()) return radial_ ? 0.0 : gauss_.left_endpoint();
  const double lc = line.log_cdf(x);
  if (lc < -std::numbers::ln2) {
    return radial_ ? gauss_.Phi0_inv_log_lower(lc) : gauss_.Phi_delta_inv_log_lower(lc);
  }
  const double ls = line.log_sf(x);
  if (ls == -std::numeric_limits<double>::infinity()) return std::numeric_limits<double>::infinity();
  return radial_ ? gauss_.Phi0_inv_log_upper(ls) : gauss_.Phi_delta_inv_log_upper(ls);
}

double TransportMap::y_inv(double t) const {
  const Density1D& line = mu_.line();
  const double lo = radial_ ? 0.0 : gauss_.left_endpoint();
  if (t <= lo) return line.lo();
  const double lc = radial_ ? gauss_.log_Phi0(t) : gauss_.log_Phi_delta(t);
  if (lc < -std::numbers::ln2) return line.quantile_log_lower(lc);
  const double ls = radial_ ? gauss_.log_Phi0_upper(t) : gauss_.log_Phi_delta_upper(t);
  return line.quantile_log_upper(ls);
}

double TransportMap::log_reference_density(double t) const {
  return radial_ ? gauss_.log_dPhi0(t) : gauss_.log_dPhi_delta(t);
}

double TransportMap::dy(double x) const {
  return std::exp(mu_.line().log_pdf(x) - log_reference_density(y(x)));
}

double TransportMap::phi_theta(double r, double /*angle*/) const { return mu_.line().cdf(r); }

double TransportMap::dphi_theta(double r, double /*angle*/) const { return mu_.line().pdf(r); }

std::array<double, 2> TransportMap::map_point(double x1, double x2) const {
  const double r = std::hypot(x1, x2);
  if (r == 0.0) return {0.0, 0.0};
  const double s = y(r) / r;
  return {x1 * s, x2 * s};
}

void TransportMap::write_csv(std::ostream& os, double a, double b, int n) const {
  const auto old = os.precision(17);
  os << "x,y(x)\n";
  for (int i = 0; i < n; ++i) {
    const double x = n == 1 ? a : a + (b - a) * i / (n - 1);
    os << x << ',' << y(x) << '\n';
  }
  os.precision(old);
}

}  // namespace transineq
