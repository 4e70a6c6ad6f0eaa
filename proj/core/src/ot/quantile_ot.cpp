#include "transineq/ot/quantile_ot.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "transineq/errors.hpp"
#include "transineq/measure/quadrature.hpp"

namespace transineq {
namespace {

class DensitySource final : public QuantileSource {
 public:
  explicit DensitySource(std::shared_ptr<const Density1D> d) : d_(std::move(d)) {}
  double q_log_lower(double lu) const override { return d_->quantile_log_lower(lu); }
  double q_log_upper(double lv) const override { return d_->quantile_log_upper(lv); }

 private:
  std::shared_ptr<const Density1D> d_;
};

class GaussianSource final : public QuantileSource {
 public:
  GaussianSource(double left, double shift, double scale)
      : g_(left, 1), shift_(shift), scale_(scale) {}
  double q_log_lower(double lu) const override { return shift_ + scale_ * g_.Phi_delta_inv_log_lower(lu); }
  double q_log_upper(double lv) const override { return shift_ + scale_ * g_.Phi_delta_inv_log_upper(lv); }

 private:
  GaussFunctions g_;
  double shift_, scale_;
};

class RadialGaussianSource final : public QuantileSource {
 public:
  explicit RadialGaussianSource(int dim) : g_(0.0, dim) {}
  double q_log_lower(double lu) const override { return g_.Phi0_inv_log_lower(lu); }
  double q_log_upper(double lv) const override { return g_.Phi0_inv_log_upper(lv); }

 private:
  GaussFunctions g_;
};

class MappedSource final : public QuantileSource {
 public:
  MappedSource(std::shared_ptr<const QuantileSource> base, std::function<double(double)> f)
      : base_(std::move(base)), f_(std::move(f)) {}
  double q_log_lower(double lu) const override { return f_(base_->q_log_lower(lu)); }
  double q_log_upper(double lv) const override { return f_(base_->q_log_upper(lv)); }

 private:
  std::shared_ptr<const QuantileSource> base_;
  std::function<double(double)> f_;
};

constexpr double kSliver = 1e-7;

}  // namespace

double QuantileSource::q(double u) const {
  if (!(u > 0.0 && u < 1.0)) throw Error(ErrorCode::kQuantileOutOfRange, "u must lie in (0, 1)");
  return u <= 0.5 ? q_log_lower(std::log(u)) : q_log_upper(std::log1p(-u));
}

std::shared_ptr<const QuantileSource> density_source(std::shared_ptr<const Density1D> d) {
  return std::make_shared<DensitySource>(std::move(d));
}

std::shared_ptr<const QuantileSource> gaussian_source(double left_endpoint, double shift, double scale) {
  if (!(scale > 0.0)) throw Error(ErrorCode::kInvalidArgument, "scale must be > 0");
  return std::make_shared<GaussianSource>(left_endpoint, shift, scale);
}

std::shared_ptr<const QuantileSource> radial_gaussian_source(int dim) {
  return std::make_shared<RadialGaussianSource>(dim);
}

std::shared_ptr<const QuantileSource> mapped_source(std::shared_ptr<const QuantileSource> base,
                                                    std::function<double(double)> increasing) {
  return std::make_shared<MappedSource>(std::move(base), std::move(increasing));
}

QuantileResult w_quantile_1d(const QuantileSource& a, const QuantileSource& b, const CostFn& cost) {
  const DistanceMode mode = cost.base().mode();
  if (cost.tag() == CostTag::kRhoTildeSq ||
      (mode != DistanceMode::kEuclidean && mode != DistanceMode::kPullback)) {
    throw Error(ErrorCode::kModeUnsupported, "quantile coupling needs a cost convex in a monotone coordinate");
  }
  if (mode == DistanceMode::kPullback && cost.base().map()->radial()) {
    throw Error(ErrorCode::kModeUnsupported, "quantile coupling runs on the line");
  }
  // With t = -log u each half becomes int_{ln 2}^inf c(.) e^{-t} dt.
  auto half = [&](bool lower, double t_lo, double t_hi, quad::Result& acc, double abs_tol) {
    auto integrand = [&](double t) {
      const double x = lower ? a.q_log_lower(-t) : a.q_log_upper(-t);
      const double y = lower ? b.q_log_lower(-t) : b.q_log_upper(-t);
      if (x == y) return 0.0;
      const double c = cost(x, y) * std::exp(-t);
      return std::isfinite(c) ? c : 0.0;
    };
    quad::Options opt;
    opt.rel_tol = 1e-11;
    // Identical laws built twice differ by rounding only; without a floor
    // the noise would be refined forever.
    opt.abs_tol = abs_tol;
    const quad::Result r = quad::adaptive(integrand, t_lo, t_hi, opt);
    acc.value += r.value;
    acc.error += r.error;
  };
  const double t_cut = -std::log(kSliver);
  const double bulk_breaks[] = {std::numbers::ln2, 1.0, 2.0, 4.0, 8.0, t_cut};
  quad::Result bulk, tails;
  for (bool lower : {true, false}) {
    for (std::size_t i = 0; i + 1 < std::size(bulk_breaks); ++i) {
      half(lower, bulk_breaks[i], bulk_breaks[i + 1], bulk, 1e-22);
    }
    double lo = t_cut, width = t_cut;
    for (int k = 0; k < 60; ++k) {
      quad::Result piece;
      // The slivers carry at most 2e-7 of the mass; resolving them to
      // 1e-14 of the bulk keeps the total at the bulk tolerance.
      half(lower, lo, lo + width, piece, std::max(1e-22, 1e-14 * bulk.value));
      tails.value += piece.value;
      tails.error += piece.error;
      if (std::abs(piece.value) <= 1e-17 * std::max(bulk.value + tails.value, 1e-300)) break;
      lo += width;
      width *= 2.0;
    }
  }
  QuantileResult out;
  out.bulk = bulk.value;
  out.tails = tails.value;
  out.tail_error = tails.error;
  out.raw = bulk.value + tails.value;
  out.value = cost.tag() == CostTag::kPowerP ? std::pow(out.raw, 1.0 / cost.p()) : out.raw;
  return out;
}

std::shared_ptr<const Density1D> perturbed_line(const PotentialMeasure& mu, const DensityPerturbation& pert) {
  if (pert.def().angular) {
    throw Error(ErrorCode::kNonRadialPerturbation, pert.id() + " depends on the angle");
  }
  const Density1D& line = mu.line();
  Density1D::Options opt;
  opt.breaks = pert.def().breaks;
  for (double k : mu.spec().kinks()) opt.breaks.push_back(k);
  std::sort(opt.breaks.begin(), opt.breaks.end());
  auto line_ptr = mu.line_ptr();
  return std::make_shared<const Density1D>(
      [line_ptr, pert](double x) { return line_ptr->log_f(x) + 2.0 * pert.log_abs_f(x, 0.0); }, line.lo(),
      line.hi(), opt);
}

double w_pullback(const PotentialMeasure& mu, const DensityPerturbation& pert, const TransportMap& map,
                  double p) {
  if (!(p >= 1.0)) throw Error(ErrorCode::kInvalidArgument, "w_pullback needs p >= 1");
  if (mu.spec().is_radial() != map.radial()) {
    throw Error(ErrorCode::kInvalidArgument, "map and measure kinds differ");
  }
  const auto nu = density_source(perturbed_line(mu, pert));
  const TransportMap* m = &map;
  const auto image = mapped_source(nu, [m](double x) { return m->y(x); });
  const auto ref = map.radial() ? radial_gaussian_source(mu.spec().dim)
                                : gaussian_source(mu.spec().left_endpoint);
  const double w = w_quantile_1d(*ref, *image, CostFn::power(p)).value;
  return map.radial() ? w / std::sqrt(map.Ch()) : w;
}

}  // namespace transineq
