#pragma once

#include <functional>
#include <span>
#include <vector>

namespace transineq {

/// Flattened composite rule over the panels of a Density1D table.
struct Quadrature1D {
  std::vector<double> nodes;
  std::vector<double> weights;
  double r_max = 0.0;
  double rel_tol = 0.0;
};

/// A finite measure on [lo, hi) given by an unnormalised log-density.
///
/// The bulk, where the density is within e^-drop of its peak, is tabulated
/// on adaptive Gauss-Legendre panels with cumulative masses from both ends.
/// Outside the bulk every quantity is computed on demand in log space, so
/// tails far below the double range (e.g. e^{-x^4} at x = 6) stay exact in
/// relative terms.
class Density1D {
 public:
  using LogFn = std::function<double(double)>;

  struct Options {
    double rel_tol = 1e-11;
    double drop = 40.0;
    std::vector<double> breaks;  // known kinks of the log-density
  };

  Density1D(LogFn log_f, double lo, double hi, Options opt);
  Density1D(LogFn log_f, double lo, double hi) : Density1D(std::move(log_f), lo, hi, Options{}) {}

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double table_lo() const noexcept { return edges_.front(); }
  double table_hi() const noexcept { return edges_.back(); }

  /// log of the total unnormalised mass.
  double log_mass() const noexcept { return log_mass_; }
  double log_f(double x) const { return log_f_(x); }

  double pdf(double x) const;
  double log_pdf(double x) const;
  double cdf(double x) const;
  double sf(double x) const;
  double log_cdf(double x) const;
  double log_sf(double x) const;

  /// Quantile for u in (0, 1). Throws QuantileOutOfRange otherwise.
  double quantile(double u) const;
  /// x with sf(x) = q.
  double quantile_upper(double q) const;
  /// x with log cdf(x) = log_u (log_u < 0).
  double quantile_log_lower(double log_u) const;
  /// x with log sf(x) = log_q (log_q < 0).
  double quantile_log_upper(double log_q) const;

  /// Normalised integral of g(x) * exp(log_w(x)) against this measure.
  /// `breaks` marks kinks of g or log_w; the range is extended past the
  /// bulk until the integrand is negligible.
  double expect(const std::function<double(double)>& log_w,
                const std::function<double(double)>& g,
                std::span<const double> breaks = {}) const;
  double expect(const std::function<double(double)>& g,
                std::span<const double> breaks = {}) const;

  const std::vector<double>& edges() const noexcept { return edges_; }
  Quadrature1D quadrature() const;

 private:
  double scaled(double x) const;
  double partial(double a, double b) const;
  // log of the unnormalised mass of [x, hi) and (lo, x].
  double log_tail_right(double x) const;
  double log_tail_left(double x) const;
  double solve_in_table_lower(double target) const;
  double solve_in_table_upper(double target) const;
  std::size_t panel_of(double x) const;

  LogFn log_f_;
  double lo_, hi_;
  double rel_tol_;
  double shift_ = 0.0;
  std::vector<double> edges_;
  std::vector<double> cum_left_;   // mass of [L, edges_[i]], scaled by e^-shift
  std::vector<double> cum_right_;  // mass of [edges_[i], R], scaled
  double left_tail_ = 0.0;         // scaled mass of [lo, L)
  double right_tail_ = 0.0;        // scaled mass of (R, hi)
  double total_ = 0.0;
  double log_mass_ = 0.0;
};

}  // namespace transineq
