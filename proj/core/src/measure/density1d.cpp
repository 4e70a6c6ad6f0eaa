#include "transineq/measure/density1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "transineq/errors.hpp"
#include "transineq/measure/quadrature.hpp"
#include "transineq/measure/roots.hpp"

namespace transineq {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Panel {
  double a, b, mass;
};

// Adaptive bisection that keeps the accepted panels.
template <class F>
void collect_panels(const F& f, double a, double b, double abs_tol, std::vector<Panel>& out) {
  struct Item {
    double lo, hi, est;
    int depth;
  };
  std::vector<Item> stack{{a, b, quad::fixed(f, a, b), 0}};
  std::vector<Panel> local;
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    const double mid = 0.5 * (it.lo + it.hi);
    const double l = quad::fixed(f, it.lo, mid);
    const double r = quad::fixed(f, mid, it.hi);
    if (std::abs(l + r - it.est) <= abs_tol || it.depth >= 50) {
      local.push_back({it.lo, mid, l});
      local.push_back({mid, it.hi, r});
      continue;
    }
    stack.push_back({mid, it.hi, r, it.depth + 1});
    stack.push_back({it.lo, mid, l, it.depth + 1});
  }
  std::sort(local.begin(), local.end(), [](const Panel& p, const Panel& q) { return p.a < q.a; });
  out.insert(out.end(), local.begin(), local.end());
}

}  // namespace

Density1D::Density1D(LogFn log_f, double lo, double hi, Options opt)
    : log_f_(std::move(log_f)), lo_(lo), hi_(hi), rel_tol_(opt.rel_tol) {
  if (!(hi > lo)) throw Error(ErrorCode::kInvalidArgument, "empty domain");
  const bool lo_fin = std::isfinite(lo), hi_fin = std::isfinite(hi);
  double anchor = lo_fin ? (hi_fin ? 0.5 * (lo + hi) : lo) : (hi_fin ? hi : 0.0);

  double L = lo, R = hi;
  for (int attempt = 0; attempt < 4; ++attempt) {
    std::vector<double> xs{anchor};
    const double unit = std::max(1.0, std::abs(anchor)) / 256.0;
    for (int k = 0; k <= 50; ++k) {
      const double t = unit * std::ldexp(1.0, k);
      xs.push_back(anchor + t);
      xs.push_back(anchor - t);
    }
    if (lo_fin) xs.push_back(lo);
    if (hi_fin) xs.push_back(hi);
    xs.erase(std::remove_if(xs.begin(), xs.end(), [&](double x) { return x < lo || x > hi; }),
             xs.end());
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<double> ys(xs.size());
    std::size_t imax = 0;
    double best = -kInf;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      ys[i] = log_f_(xs[i]);
      if (std::isnan(ys[i])) ys[i] = -kInf;
      if (ys[i] > best) {
        best = ys[i];
        imax = i;
      }
    }
    if (!std::isfinite(best)) {
      throw Error(ErrorCode::kNonIntegrable, "log-density is not finite at any probe point");
    }
    // Local refinement of the peak between its neighbours.
    const double pa = xs[imax > 0 ? imax - 1 : 0];
    const double pb = xs[std::min(imax + 1, xs.size() - 1)];
    double peak = xs[imax];
    for (int j = 1; j < 64; ++j) {
      const double x = pa + (pb - pa) * j / 64.0;
      const double y = log_f_(x);
      if (y > best) {
        best = y;
        peak = x;
      }
    }
    shift_ = best;
    const double cut = best - opt.drop;

    // Right end of the bulk.
    std::size_t ip = std::lower_bound(xs.begin(), xs.end(), peak) - xs.begin();
    std::size_t jr = xs.size();
    for (std::size_t k = xs.size(); k-- > ip;) {
      if (ys[k] >= cut) break;
      jr = k;
    }
    if (jr == xs.size()) {
      if (!hi_fin) throw Error(ErrorCode::kNonIntegrable, "density does not decay to the right");
      R = hi;
    } else {
      if (!hi_fin && xs.size() >= 2 && ys.back() > ys[xs.size() - 2]) {
        throw Error(ErrorCode::kNonIntegrable, "tail integrand not decreasing past probe radius");
      }
      double a = jr > 0 ? std::max(xs[jr - 1], peak) : peak, b = xs[jr];
      for (int it = 0; it < 60 && b - a > 1e-12 * std::max(1.0, std::abs(b)); ++it) {
        const double m = 0.5 * (a + b);
        (log_f_(m) >= cut ? a : b) = m;
      }
      R = b;
    }
    // Left end of the bulk.
    std::size_t jl = static_cast<std::size_t>(-1);
    for (std::size_t k = 0; k < xs.size() && xs[k] <= peak; ++k) {
      if (ys[k] >= cut) break;
      jl = k;
    }
    if (jl == static_cast<std::size_t>(-1)) {
      if (!lo_fin) throw Error(ErrorCode::kNonIntegrable, "density does not decay to the left");
      L = lo;
    } else {
      if (!lo_fin && xs.size() >= 2 && ys.front() > ys[1]) {
        throw Error(ErrorCode::kNonIntegrable, "tail integrand not decreasing past probe radius");
      }
      double a = xs[jl], b = jl + 1 < xs.size() ? std::min(xs[jl + 1], peak) : peak;
      for (int it = 0; it < 60 && b - a > 1e-12 * std::max(1.0, std::abs(a)); ++it) {
        const double m = 0.5 * (a + b);
        (log_f_(m) >= cut ? b : a) = m;
      }
      L = a;
    }
    if (!(R > L)) {
      L = std::max(lo, peak - 1e-6 * std::max(1.0, std::abs(peak)));
      R = std::min(hi, peak + 1e-6 * std::max(1.0, std::abs(peak)));
    }

    std::vector<double> base{L, R};
    if (opt.breaks.empty() == false) base = quad::merge_breaks(base, opt.breaks);
    double seen_max = -kInf;
    auto f = [&](double x) {
      const double y = log_f_(x);
      if (y > seen_max) seen_max = y;
      const double e = std::exp(y - shift_);
      return std::isfinite(e) ? e : 0.0;
    };
    double est = 0.0;
    for (std::size_t i = 0; i + 1 < base.size(); ++i) {
      const double h = (base[i + 1] - base[i]) / 32.0;
      for (int j = 0; j < 32; ++j) est += quad::fixed(f, base[i] + j * h, base[i] + (j + 1) * h);
    }
    if (seen_max > shift_ + 1.0) {
      // The probe missed the real peak; re-anchor there.
      double arg = anchor;
      double bestv = -kInf;
      for (std::size_t i = 0; i + 1 < base.size(); ++i) {
        const double h = (base[i + 1] - base[i]) / 256.0;
        for (int j = 0; j <= 256; ++j) {
          const double x = base[i] + j * h;
          const double y = log_f_(x);
          if (y > bestv) {
            bestv = y;
            arg = x;
          }
        }
      }
      anchor = arg;
      continue;
    }
    std::vector<Panel> panels;
    const double abs_tol = opt.rel_tol * est;
    for (std::size_t i = 0; i + 1 < base.size(); ++i) {
      collect_panels(f, base[i], base[i + 1], abs_tol, panels);
    }
    edges_.clear();
    edges_.push_back(L);
    for (const Panel& p : panels) edges_.push_back(p.b);
    edges_.back() = R;
    cum_left_.assign(edges_.size(), 0.0);
    cum_right_.assign(edges_.size(), 0.0);
    long double acc = 0.0L;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      acc += panels[i].mass;
      cum_left_[i + 1] = static_cast<double>(acc);
    }
    acc = 0.0L;
    for (std::size_t i = panels.size(); i-- > 0;) {
      acc += panels[i].mass;
      cum_right_[i] = static_cast<double>(acc);
    }
    break;
  }
  if (edges_.empty()) throw Error(ErrorCode::kQuadratureFailure, "could not locate the bulk");

  right_tail_ = R < hi ? std::exp(log_tail_right(R) - shift_) : 0.0;
  left_tail_ = L > lo ? std::exp(log_tail_left(L) - shift_) : 0.0;
  total_ = left_tail_ + cum_left_.back() + right_tail_;
  if (!(total_ > 0.0) || !std::isfinite(total_)) {
    throw Error(ErrorCode::kNonIntegrable, "total mass is not finite and positive");
  }
  log_mass_ = shift_ + std::log(total_);
}

double Density1D::scaled(double x) const {
  const double e = std::exp(log_f_(x) - shift_);
  return std::isfinite(e) ? e : 0.0;
}

double Density1D::partial(double a, double b) const {
  if (!(b > a)) return 0.0;
  return quad::fixed([this](double x) { return scaled(x); }, a, b);
}

double Density1D::log_tail_right(double x) const {
  if (!(x < hi_)) return -kInf;
  double ref = log_f_(x);
  const double h = 1e-6 * std::max(1.0, std::abs(x));
  const double slope = (log_f_(x + h) - ref) / h;
  double w = std::max(1.0, std::abs(x)) * 0.1;
  if (std::isfinite(slope) && slope < 0.0) {
    w = std::clamp(1.0 / -slope, 1e-12 * std::max(1.0, std::abs(x)), 1e3 * std::max(1.0, std::abs(x)));
  }
  if (!std::isfinite(ref)) {
    ref = -kInf;
    for (int k = 0; k < 8; ++k) ref = std::max(ref, log_f_(std::min(hi_, x + w * std::ldexp(1.0, k - 3))));
    if (!std::isfinite(ref)) return -kInf;
  }
  auto f = [&](double s) {
    const double e = std::exp(log_f_(s) - ref);
    return std::isfinite(e) ? e : 0.0;
  };
  quad::Options qo;
  qo.rel_tol = 1e-13;
  long double sum = 0.0L;
  double a = x;
  for (int k = 0; k < 400; ++k) {
    const double b = std::min(a + w, hi_);
    const double part = quad::adaptive(f, a, b, qo).value;
    sum += part;
    if (b >= hi_) return ref + std::log(static_cast<double>(sum));
    if (k >= 1 && part <= 1e-18 * static_cast<double>(sum) && log_f_(b) <= log_f_(a)) {
      return ref + std::log(static_cast<double>(sum));
    }
    a = b;
    w *= 2.0;
  }
  throw Error(ErrorCode::kNonIntegrable, "right tail integral did not converge");
}

double Density1D::log_tail_left(double x) const {
  if (!(x > lo_)) return -kInf;
  double ref = log_f_(x);
  const double h = 1e-6 * std::max(1.0, std::abs(x));
  const double slope = (ref - log_f_(x - h)) / h;
  double w = std::max(1.0, std::abs(x)) * 0.1;
  if (std::isfinite(slope) && slope > 0.0) {
    w = std::clamp(1.0 / slope, 1e-12 * std::max(1.0, std::abs(x)), 1e3 * std::max(1.0, std::abs(x)));
  }
  if (!std::isfinite(ref)) {
    ref = -kInf;
    for (int k = 0; k < 8; ++k) ref = std::max(ref, log_f_(std::max(lo_, x - w * std::ldexp(1.0, k - 3))));
    if (!std::isfinite(ref)) return -kInf;
  }
  auto f = [&](double s) {
    const double e = std::exp(log_f_(s) - ref);
    return std::isfinite(e) ? e : 0.0;
  };
  quad::Options qo;
  qo.rel_tol = 1e-13;
  long double sum = 0.0L;
  double b = x;
  for (int k = 0; k < 400; ++k) {
    const double a = std::max(b - w, lo_);
    const double part = quad::adaptive(f, a, b, qo).value;
    sum += part;
    if (a <= lo_) return ref + std::log(static_cast<double>(sum));
    if (k >= 1 && part <= 1e-18 * static_cast<double>(sum) && log_f_(a) <= log_f_(b)) {
      return ref + std::log(static_cast<double>(sum));
    }
    b = a;
    w *= 2.0;
  }
  throw Error(ErrorCode::kNonIntegrable, "left tail integral did not converge");
}

std::size_t Density1D::panel_of(double x) const {
  auto it = std::upper_bound(edges_.begin(), edges_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - edges_.begin());
  if (i == 0) return 0;
  return std::min(i - 1, edges_.size() - 2);
}

double Density1D::pdf(double x) const {
  if (x < lo_ || x > hi_) return 0.0;
  return std::exp(log_f_(x) - log_mass_);
}

double Density1D::log_pdf(double x) const {
  if (x < lo_ || x > hi_) return -kInf;
  return log_f_(x) - log_mass_;
}

double Density1D::cdf(double x) const {
  if (x <= lo_) return 0.0;
  if (x >= hi_) return 1.0;
  if (x < table_lo()) return std::exp(log_tail_left(x) - log_mass_);
  if (x > table_hi()) return -std::expm1(log_tail_right(x) - log_mass_);
  const std::size_t i = panel_of(x);
  return (left_tail_ + cum_left_[i] + partial(edges_[i], x)) / total_;
}

double Density1D::sf(double x) const {
  if (x <= lo_) return 1.0;
  if (x >= hi_) return 0.0;
  if (x > table_hi()) return std::exp(log_tail_right(x) - log_mass_);
  if (x < table_lo()) return -std::expm1(log_tail_left(x) - log_mass_);
  const std::size_t i = panel_of(x);
  return (right_tail_ + cum_right_[i + 1] + partial(x, edges_[i + 1])) / total_;
}

double Density1D::log_cdf(double x) const {
  if (x <= lo_) return -kInf;
  if (x >= hi_) return 0.0;
  if (x < table_lo()) return log_tail_left(x) - log_mass_;
  if (x > table_hi()) return std::log1p(-sf(x));
  return std::log(cdf(x));
}

double Density1D::log_sf(double x) const {
  if (x <= lo_) return 0.0;
  if (x >= hi_) return -kInf;
  if (x > table_hi()) return log_tail_right(x) - log_mass_;
  if (x < table_lo()) return std::log1p(-cdf(x));
  return std::log(sf(x));
}

double Density1D::solve_in_table_lower(double target) const {
  // target: scaled mass measured from lo.
  const double base = target - left_tail_;
  std::size_t i = static_cast<std::size_t>(
      std::upper_bound(cum_left_.begin(), cum_left_.end(), base) - cum_left_.begin());
  i = std::clamp<std::size_t>(i == 0 ? 0 : i - 1, 0, edges_.size() - 2);
  const double need = base - cum_left_[i];
  const double a = edges_[i], b = edges_[i + 1];
  return roots::safeguarded_newton(
      [&](double x) { return std::make_pair(partial(a, x) - need, scaled(x)); }, a, b,
      1e-15);
}

double Density1D::solve_in_table_upper(double target) const {
  const double base = target - right_tail_;
  // cum_right_ is decreasing; find last i with cum_right_[i] >= base.
  std::size_t lo = 0, hi = edges_.size() - 1;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    (cum_right_[mid] >= base ? lo : hi) = mid;
  }
  const std::size_t i = lo;
  const double need = base - cum_right_[i + 1];
  const double a = edges_[i], b = edges_[i + 1];
  return roots::safeguarded_newton(
      [&](double x) { return std::make_pair(need - partial(x, b), scaled(x)); }, a, b, 1e-15);
}

double Density1D::quantile(double u) const {
  if (!(u > 0.0 && u < 1.0)) {
    throw Error(ErrorCode::kQuantileOutOfRange, "u must lie in (0, 1)");
  }
  if (u <= 0.5) return quantile_log_lower(std::log(u));
  return quantile_upper(1.0 - u);
}

double Density1D::quantile_upper(double q) const {
  if (!(q > 0.0 && q < 1.0)) {
    throw Error(ErrorCode::kQuantileOutOfRange, "q must lie in (0, 1)");
  }
  return quantile_log_upper(std::log(q));
}

double Density1D::quantile_log_lower(double log_u) const {
  if (!(log_u < 0.0)) throw Error(ErrorCode::kQuantileOutOfRange, "log u must be negative");
  const double u = std::exp(log_u);
  if (u > 0.5) return quantile_log_upper(std::log1p(-u));
  const double left_frac_log = left_tail_ > 0.0 ? std::log(left_tail_ / total_) : -kInf;
  if (log_u >= left_frac_log) {
    const double t = u * total_;
    if (t <= left_tail_ + cum_left_.back()) return solve_in_table_lower(t);
    return quantile_log_upper(std::log1p(-u));
  }
  // Below the bulk: Newton on log cdf.
  const double b = table_lo();
  double w = std::max(1e-6, 1e-3 * (table_hi() - table_lo()));
  double a = std::max(lo_, b - w);
  while (a > lo_ && log_cdf(a) > log_u) {
    w *= 2.0;
    a = std::max(lo_, b - w);
  }
  return roots::safeguarded_newton(
      [&](double x) {
        const double lt = log_tail_left(x);
        return std::make_pair(lt - log_mass_ - log_u, std::exp(log_f_(x) - lt));
      },
      a, b, 1e-15);
}

double Density1D::quantile_log_upper(double log_q) const {
  if (!(log_q < 0.0)) throw Error(ErrorCode::kQuantileOutOfRange, "log q must be negative");
  const double q = std::exp(log_q);
  if (q > 0.5) return quantile_log_lower(std::log1p(-q));
  const double right_frac_log = right_tail_ > 0.0 ? std::log(right_tail_ / total_) : -kInf;
  if (log_q >= right_frac_log) {
    const double t = q * total_;
    if (t <= right_tail_ + cum_right_.front()) return solve_in_table_upper(t);
    return quantile_log_lower(std::log1p(-q));
  }
  const double a = table_hi();
  double w = std::max(1e-6, 1e-3 * (table_hi() - table_lo()));
  double b = std::min(hi_, a + w);
  while (b < hi_ && log_sf(b) > log_q) {
    w *= 2.0;
    b = std::min(hi_, a + w);
  }
  return roots::safeguarded_newton(
      [&](double x) {
        const double lt = log_tail_right(x);
        return std::make_pair(log_q - (lt - log_mass_), std::exp(log_f_(x) - lt));
      },
      a, b, 1e-15);
}

double Density1D::expect(const std::function<double(double)>& g,
                         std::span<const double> breaks) const {
  return expect([](double) { return 0.0; }, g, breaks);
}

double Density1D::expect(const std::function<double(double)>& log_w,
                         const std::function<double(double)>& g,
                         std::span<const double> breaks) const {
  auto integrand = [&](double x) {
    const double lw = log_w(x) + log_f_(x) - shift_;
    if (!(lw > -745.0)) return 0.0;
    const double e = std::exp(lw);
    if (e == 0.0) return 0.0;
    const double v = g(x) * e;
    return std::isfinite(v) ? v : 0.0;
  };
  quad::Options qo;
  qo.rel_tol = rel_tol_;
  std::vector<double> part = quad::merge_breaks(edges_, breaks);
  // Scale hint for absolute tolerance: coarse estimate of the absolute integral.
  double scale = 0.0;
  for (std::size_t i = 0; i + 1 < part.size(); ++i) {
    scale += std::abs(quad::fixed([&](double x) { return std::abs(integrand(x)); }, part[i], part[i + 1]));
  }
  qo.abs_tol = std::max(1e-300, 1e-15 * scale);
  long double sum = quad::adaptive_piecewise(integrand, part, qo).value;

  auto extend = [&](double start, int dir) {
    double w = std::max(0.125 * (table_hi() - table_lo()), 1e-3 * std::max(1.0, std::abs(start)));
    double a = start;
    for (int k = 0; k < 200; ++k) {
      double b = a + dir * w;
      if (dir > 0) b = std::min(b, hi_);
      else b = std::max(b, lo_);
      std::vector<double> seg{std::min(a, b), std::max(a, b)};
      seg = quad::merge_breaks(seg, breaks);
      const double p = quad::adaptive_piecewise(integrand, seg, qo).value;
      sum += p;
      if (b == hi_ || b == lo_) return;
      const double ref = std::max(std::abs(static_cast<double>(sum)), 1e-300);
      if (k >= 1 && std::abs(p) <= 1e-16 * ref) return;
      a = b;
      w *= 2.0;
    }
    throw Error(ErrorCode::kNonIntegrable, "expectation integrand does not decay");
  };
  if (table_hi() < hi_) extend(table_hi(), +1);
  if (table_lo() > lo_) extend(table_lo(), -1);
  return static_cast<double>(sum) / total_;
}

Quadrature1D Density1D::quadrature() const {
  Quadrature1D q;
  const quad::Rule& rule = quad::gauss_legendre(quad::kPanelOrder);
  for (std::size_t i = 0; i + 1 < edges_.size(); ++i) {
    const double mid = 0.5 * (edges_[i] + edges_[i + 1]);
    const double half = 0.5 * (edges_[i + 1] - edges_[i]);
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      const double x = mid + half * rule.nodes[k];
      q.nodes.push_back(x);
      q.weights.push_back(rule.weights[k] * half * scaled(x) / total_);
    }
  }
  q.r_max = table_hi();
  q.rel_tol = rel_tol_;
  return q;
}

}  // namespace transineq
