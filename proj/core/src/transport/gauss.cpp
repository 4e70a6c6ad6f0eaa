#include "transineq/transport/gauss.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "transineq/errors.hpp"
#include "transineq/measure/roots.hpp"

namespace transineq {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLn2 = std::numbers::ln2;

double log_p_series(double a, double x) {
  double term = 1.0 / a, sum = term;
  for (int n = 1; n < 100000; ++n) {
    term *= x / (a + n);
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return -x + a * std::log(x) - std::lgamma(a) + std::log(sum);
}

double log_q_fraction(double a, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 100000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return -x + a * std::log(x) - std::lgamma(a) + std::log(h);
}

bool use_series(double a, double x) { return x < a + 0.5; }

// Increasing-function root in y over [lo, inf) with an outward bracket search.
template <class F>
double solve_up(const F& f, double lo, double start) {
  double a = lo, b = start;
  if (!std::isfinite(a)) {
    a = std::min(start, 0.0) - 1.0;
    double step = 1.0;
    while (f(a).first > 0.0) {
      b = a;
      step *= 2.0;
      a -= step;
    }
  }
  if (b <= a) b = a + 1.0;
  double step = 1.0;
  while (f(b).first < 0.0) {
    a = b;
    b += step;
    step *= 2.0;
  }
  return roots::safeguarded_newton(f, a, b, 1e-15);
}

}  // namespace

double log_gamma_p(double a, double x) {
  if (x <= 0.0) return -kInf;
  if (!std::isfinite(x)) return 0.0;
  if (use_series(a, x)) return log_p_series(a, x);
  return std::log1p(-std::exp(log_q_fraction(a, x)));
}

double log_gamma_q(double a, double x) {
  if (x <= 0.0) return 0.0;
  if (!std::isfinite(x)) return -kInf;
  if (use_series(a, x)) return std::log1p(-std::exp(log_p_series(a, x)));
  return log_q_fraction(a, x);
}

double log_normal_sf(double t) {
  if (t == -kInf) return 0.0;
  if (t == kInf) return -kInf;
  if (t >= 0.0) return -kLn2 + log_gamma_q(0.5, 0.5 * t * t);
  return std::log1p(-0.5 * std::exp(log_gamma_q(0.5, 0.5 * t * t)));
}

double log_normal_cdf(double t) { return log_normal_sf(-t); }

GaussFunctions::GaussFunctions(double left_endpoint, int dim)
    : delta0_(left_endpoint), dim_(dim) {
  if (dim < 1) throw Error(ErrorCode::kInvalidArgument, "dimension must be >= 1");
  if (std::isnan(left_endpoint) || left_endpoint == kInf) {
    throw Error(ErrorCode::kInvalidArgument, "left endpoint must lie in [-inf, inf)");
  }
  log_sf0_ = log_normal_sf(delta0_);
  log_c_delta_ = 0.5 * std::log(2.0 * std::numbers::pi) + log_sf0_;
  const double a = 0.5 * dim;
  log_norm0_ = (a - 1.0) * kLn2 + std::lgamma(a);
}

double GaussFunctions::c_delta() const { return std::exp(log_c_delta_); }

double GaussFunctions::log_Phi_delta_upper(double r) const {
  if (r <= delta0_) return 0.0;
  return log_normal_sf(r) - log_sf0_;
}

double GaussFunctions::log_Phi_delta(double r) const {
  if (r <= delta0_) return -kInf;
  if (r < 0.0) {
    const double lr = log_normal_cdf(r);
    const double l0 = std::isfinite(delta0_) ? log_normal_cdf(delta0_) : -kInf;
    return lr + std::log(-std::expm1(l0 - lr)) - log_sf0_;
  }
  return std::log(-std::expm1(log_Phi_delta_upper(r)));
}

double GaussFunctions::Phi_delta(double r) const { return std::exp(log_Phi_delta(r)); }

double GaussFunctions::log_dPhi_delta(double r) const {
  if (r < delta0_) return -kInf;
  return -0.5 * r * r - log_c_delta_;
}

double GaussFunctions::dPhi_delta(double r) const { return std::exp(log_dPhi_delta(r)); }

double GaussFunctions::Phi_delta_inv(double u) const {
  if (!(u > 0.0 && u < 1.0)) throw Error(ErrorCode::kInverseOutOfRange, "u must lie in (0, 1)");
  if (u <= 0.5) return Phi_delta_inv_log_lower(std::log(u));
  return Phi_delta_inv_log_upper(std::log1p(-u));
}

double GaussFunctions::Phi_delta_inv_log_lower(double log_u) const {
  if (!(log_u < 0.0)) throw Error(ErrorCode::kInverseOutOfRange, "log u must be negative");
  if (log_u > -kLn2) return Phi_delta_inv_log_upper(std::log1p(-std::exp(log_u)));
  auto f = [&](double y) {
    const double l = log_Phi_delta(y);
    return std::make_pair(l - log_u, std::exp(log_dPhi_delta(y) - l));
  };
  const double start = std::isfinite(delta0_) ? delta0_ + 1.0 : 0.0;
  return solve_up(f, delta0_, start);
}

double GaussFunctions::Phi_delta_inv_log_upper(double log_q) const {
  if (!(log_q < 0.0)) throw Error(ErrorCode::kInverseOutOfRange, "log q must be negative");
  if (log_q > -kLn2) return Phi_delta_inv_log_lower(std::log1p(-std::exp(log_q)));
  auto f = [&](double y) {
    const double l = log_Phi_delta_upper(y);
    return std::make_pair(log_q - l, std::exp(log_dPhi_delta(y) - l));
  };
  const double start = std::isfinite(delta0_) ? std::max(delta0_, 0.0) + std::sqrt(-2.0 * log_q)
                                              : std::sqrt(-2.0 * log_q);
  return solve_up(f, delta0_, start);
}

double GaussFunctions::log_Phi0(double r) const {
  if (r <= 0.0) return -kInf;
  return log_gamma_p(0.5 * dim_, 0.5 * r * r);
}

double GaussFunctions::log_Phi0_upper(double r) const {
  if (r <= 0.0) return 0.0;
  return log_gamma_q(0.5 * dim_, 0.5 * r * r);
}

double GaussFunctions::Phi0(double r) const { return std::exp(log_Phi0(r)); }

double GaussFunctions::log_dPhi0(double r) const {
  if (r < 0.0) return -kInf;
  if (r == 0.0) return dim_ == 1 ? -log_norm0_ : -kInf;
  return (dim_ - 1.0) * std::log(r) - 0.5 * r * r - log_norm0_;
}

double GaussFunctions::dPhi0(double r) const { return std::exp(log_dPhi0(r)); }

double GaussFunctions::Phi0_inv(double u) const {
  if (!(u > 0.0 && u < 1.0)) throw Error(ErrorCode::kInverseOutOfRange, "u must lie in (0, 1)");
  if (u <= 0.5) return Phi0_inv_log_lower(std::log(u));
  return Phi0_inv_log_upper(std::log1p(-u));
}

double GaussFunctions::Phi0_inv_log_lower(double log_u) const {
  if (!(log_u < 0.0)) throw Error(ErrorCode::kInverseOutOfRange, "log u must be negative");
  if (log_u > -kLn2) return Phi0_inv_log_upper(std::log1p(-std::exp(log_u)));
  auto f = [&](double y) {
    const double l = log_Phi0(y);
    return std::make_pair(l - log_u, std::exp(log_dPhi0(y) - l));
  };
  // Small-argument start: Phi0(y) ~ y^d / (2^{d/2} Gamma(d/2 + 1)).
  const double a = 0.5 * dim_;
  const double guess = std::exp((log_u + a * kLn2 + std::lgamma(a + 1.0)) / dim_);
  return solve_up(f, 0.0, std::min(std::max(guess * 2.0, 1e-300), 1.0 + std::sqrt(dim_)));
}

double GaussFunctions::Phi0_inv_log_upper(double log_q) const {
  if (!(log_q < 0.0)) throw Error(ErrorCode::kInverseOutOfRange, "log q must be negative");
  if (log_q > -kLn2) return Phi0_inv_log_lower(std::log1p(-std::exp(log_q)));
  auto f = [&](double y) {
    const double l = log_Phi0_upper(y);
    return std::make_pair(log_q - l, std::exp(log_dPhi0(y) - l));
  };
  return solve_up(f, 0.0, std::sqrt(dim_ - 2.0 * log_q) + 1.0);
}

}  // namespace transineq
