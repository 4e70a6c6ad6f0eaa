#include "transineq/funcineq/beta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "transineq/errors.hpp"

namespace transineq {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLn2 = std::numbers::ln2;

std::vector<double> log_space(double lo, double hi, int n) {
  std::vector<double> v(n);
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < n; ++i) v[i] = std::exp(n == 1 ? a : a + (b - a) * i / (n - 1));
  return v;
}

// Golden-section minimum of f over [a, b].
template <class F>
std::pair<double, double> golden_min(const F& f, double a, double b, int iters = 60) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters && b - a > 1e-12 * (1.0 + std::abs(a)); ++i) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? std::make_pair(c, fc) : std::make_pair(d, fd);
}

}  // namespace

BetaProfile BetaProfile::exp_power(double c, double delta) {
  if (!(c > 0.0) || !(delta > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "exp_power beta needs c > 0 and delta > 0");
  }
  BetaProfile b;
  b.form_ = Form::kExpPower;
  b.c_ = c;
  b.delta_ = delta;
  return b;
}

BetaProfile BetaProfile::table(std::vector<double> r, std::vector<double> beta) {
  if (r.size() != beta.size() || r.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "beta table needs matching non-empty columns");
  }
  BetaProfile b;
  b.form_ = Form::kTable;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(r[i] > 0.0) || (i > 0 && !(r[i] > r[i - 1]))) {
      throw Error(ErrorCode::kInvalidArgument, "beta table r grid must be positive and increasing");
    }
    if (!(beta[i] > 0.0)) throw Error(ErrorCode::kInvalidArgument, "beta table values must be > 0");
    b.log_r_.push_back(std::log(r[i]));
    b.log_beta_.push_back(std::log(beta[i]));
  }
  b.r_ = std::move(r);
  b.beta_ = std::move(beta);
  return b;
}

double BetaProfile::log_beta(double r) const {
  if (!(r > 0.0)) return kInf;
  if (form_ == Form::kExpPower) return log_scale_ + c_ * (1.0 + std::pow(r, -1.0 / delta_));
  const double lr = std::log(r);
  const std::size_t n = log_r_.size();
  if (n == 1) return log_scale_ + log_beta_[0];
  if (lr >= log_r_.back()) return log_scale_ + log_beta_.back();
  // Below the grid the first segment is extended; above it beta is held.
  std::size_t i = 1;
  if (lr > log_r_[0]) {
    i = static_cast<std::size_t>(std::upper_bound(log_r_.begin(), log_r_.end(), lr) - log_r_.begin());
  }
  const double t = (lr - log_r_[i - 1]) / (log_r_[i] - log_r_[i - 1]);
  const double v = log_beta_[i - 1] + t * (log_beta_[i] - log_beta_[i - 1]);
  return log_scale_ + (std::isnan(v) ? kInf : v);
}

double BetaProfile::operator()(double r) const { return std::exp(log_beta(r)); }

double BetaProfile::inverse(double s) const {
  if (!(s > 0.0)) return kInf;
  return inverse_log(std::log(s));
}

double BetaProfile::inverse_log(double log_s) const {
  const double ls = log_s - log_scale_;
  if (form_ == Form::kExpPower) {
    if (!(ls > c_)) return kInf;
    return std::pow(c_ / (ls - c_), delta_);
  }
  const std::size_t n = log_beta_.size();
  std::size_t i = 0;
  while (i < n && log_beta_[i] > ls) ++i;
  if (i == n) return kInf;
  if (i == 0) {
    if (n == 1) return 0.0;
    const double slope = (log_beta_[1] - log_beta_[0]) / (log_r_[1] - log_r_[0]);
    if (!(slope < 0.0) || !std::isfinite(slope)) return r_[0];
    return std::exp(log_r_[0] + (ls - log_beta_[0]) / slope);
  }
  const double a = log_beta_[i - 1], b = log_beta_[i];
  if (!std::isfinite(a)) return r_[i];
  const double t = (a - ls) / (a - b);
  return std::exp(log_r_[i - 1] + t * (log_r_[i] - log_r_[i - 1]));
}

double BetaProfile::eta_log(double L) const {
  const double log2s = L + kLn2;
  if (!(log2s > 0.0)) return 0.0;
  const double inv = inverse_log(L - kLn2);
  return log2s * std::min(1.0, inv);
}

BetaProfile BetaProfile::scaled(double factor) const {
  if (!(factor > 0.0)) throw Error(ErrorCode::kInvalidArgument, "beta scale must be > 0");
  BetaProfile b = *this;
  b.log_scale_ += std::log(factor);
  return b;
}

BetaProfile beta_from_moments(const PotentialMeasure& mu, std::span<const double> r_grid,
                              const MomentsBetaOptions& opt) {
  if (r_grid.empty()) throw Error(ErrorCode::kInvalidArgument, "beta_from_moments needs an r grid");
  if (!(opt.K >= 0.0) || !(opt.c0 > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "beta_from_moments needs K >= 0 and c0 > 0");
  }
  std::vector<double> rs(r_grid.begin(), r_grid.end());
  std::sort(rs.begin(), rs.end());

  auto log_h = [&](double s) {
    const ExpMoment m = exp_moment(mu, 2.0 * opt.K + 12.0 / s, 2.0);
    return m.finite ? m.log_value : kInf;
  };
  // log of the objective after the r1 infimum.
  auto objective = [](double s, double lh, double r) {
    const double inner = s <= r ? std::log(s) + 1.0 : std::log(r) + s / r;
    return -std::log(s) + lh - 1.0 + inner;
  };
  // Jensen: log h(q) >= q mu(rho^2). Probes whose lower bound already
  // loses are skipped; huge q are also the expensive ones.
  const DistFunctions df(mu);
  const double m2 = mu.line().expect([&](double x) {
    const double r = df.radius(x);
    return r * r;
  });
  auto lower = [&](double s) { return (2.0 * opt.K + 12.0 / s) * m2; };
  const std::vector<double> s_grid = log_space(opt.s_lo, opt.s_hi, std::max(2, opt.n_s));
  std::vector<double> lh(s_grid.size(), std::numeric_limits<double>::quiet_NaN());

  std::vector<double> beta(rs.size());
  bool any_finite = false;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const double r = rs[i];
    double best = kInf;
    std::size_t arg = 0;
    for (std::size_t k = s_grid.size(); k-- > 0;) {
      if (std::isnan(lh[k])) {
        if (objective(s_grid[k], lower(s_grid[k]), r) >= best) continue;
        lh[k] = log_h(s_grid[k]);
      }
      const double v = objective(s_grid[k], lh[k], r);
      if (v < best) {
        best = v;
        arg = k;
      }
    }
    if (opt.refine && std::isfinite(best)) {
      const double a = std::log(s_grid[arg == 0 ? 0 : arg - 1]);
      const double b = std::log(s_grid[std::min(arg + 1, s_grid.size() - 1)]);
      auto f = [&](double ls) {
        const double s = std::exp(ls);
        return objective(s, log_h(s), r);
      };
      best = std::min(best, golden_min(f, a, b, 40).second);
    }
    if (i > 0) best = std::min(best, std::log(beta[i - 1]) - std::log(opt.c0));
    beta[i] = std::isfinite(best) ? opt.c0 * std::exp(best) : kInf;
    any_finite = any_finite || std::isfinite(best);
  }
  if (!any_finite) throw Error(ErrorCode::kAllInfinite, "every moment probe diverged");
  for (double& b : beta) {
    if (!std::isfinite(b)) b = std::numeric_limits<double>::max();
  }
  return BetaProfile::table(std::move(rs), std::move(beta));
}

double fit_exp_power_c(const BetaProfile& table, double delta, double r_lo, double r_hi) {
  double c = 0.0;
  bool any = false;
  auto consider = [&](double r) {
    const double lb = table.log_beta(r);
    c = std::max(c, lb / (1.0 + std::pow(r, -1.0 / delta)));
    any = true;
  };
  if (table.form() == BetaProfile::Form::kTable) {
    for (double r : table.r_grid()) {
      if (r >= r_lo * (1.0 - 1e-12) && r <= r_hi * (1.0 + 1e-12)) consider(r);
    }
  }
  if (!any) {
    for (double r : log_space(r_lo, r_hi, 41)) consider(r);
  }
  if (!(c > 0.0)) c = 1e-9;
  return c;
}

}  // namespace transineq
