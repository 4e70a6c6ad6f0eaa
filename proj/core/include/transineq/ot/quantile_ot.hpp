#pragma once

#include <functional>
#include <limits>
#include <memory>

#include "transineq/measure/density1d.hpp"
#include "transineq/ot/cost.hpp"
#include "transineq/ot/perturbation.hpp"
#include "transineq/transport/gauss.hpp"
#include "transineq/transport/map.hpp"

namespace transineq {

/// A law on the line seen through its quantile function. The log forms
/// keep both tails accurate: q_log_lower(log u) = F^{-1}(u) and
/// q_log_upper(log v) = F^{-1}(1 - v).
class QuantileSource {
 public:
  virtual ~QuantileSource() = default;
  virtual double q_log_lower(double log_u) const = 0;
  virtual double q_log_upper(double log_v) const = 0;
  double q(double u) const;
};

std::shared_ptr<const QuantileSource> density_source(std::shared_ptr<const Density1D> d);
/// shift + scale * Z with Z standard normal restricted to [left_endpoint, inf).
std::shared_ptr<const QuantileSource> gaussian_source(double left_endpoint = -std::numeric_limits<double>::infinity(),
                                                      double shift = 0.0, double scale = 1.0);
/// |Z| for Z standard normal in R^d.
std::shared_ptr<const QuantileSource> radial_gaussian_source(int dim);
/// Image under an increasing map.
std::shared_ptr<const QuantileSource> mapped_source(std::shared_ptr<const QuantileSource> base,
                                                    std::function<double(double)> increasing);

struct QuantileResult {
  double value = 0.0;       // with the 1/p root for power costs
  double raw = 0.0;         // int_0^1 c(F^{-1}, G^{-1}) du
  double bulk = 0.0;        // part from u in [1e-7, 1 - 1e-7]
  double tails = 0.0;       // part from the two slivers
  double tail_error = 0.0;  // quadrature error estimate on the slivers
};

/// Monotone coupling cost. Accepts costs that are convex functions of
/// |x - y| or of |Y(x) - Y(y)| for an increasing map Y (pullback_sq).
QuantileResult w_quantile_1d(const QuantileSource& a, const QuantileSource& b, const CostFn& cost);

/// W_p^rho(mu, fhat^2 mu) for rho the pullback distance of `map`, computed
/// in the Gaussian coordinates. Radial measures need a radial f.
double w_pullback(const PotentialMeasure& mu, const DensityPerturbation& pert,
                  const TransportMap& map, double p = 2.0);

/// fhat^2 mu (one-dimensional) or its law along a ray (radial).
std::shared_ptr<const Density1D> perturbed_line(const PotentialMeasure& mu,
                                                const DensityPerturbation& pert);

}  // namespace transineq
