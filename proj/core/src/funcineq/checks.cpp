#include "transineq/funcineq/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "transineq/errors.hpp"
#include "transineq/ot/quantile_ot.hpp"

namespace transineq {
namespace {

std::string at_r(const std::string& id, double r) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "@r=%.6g", r);
  return id + buf;
}

struct SpParts {
  double mass, energy, abs_mean;
};

SpParts sp_parts(const PotentialMeasure& mu, const DensityPerturbation& p, const WeightProfile* w) {
  return {mass(mu, p), energy(mu, p, w), abs_mean(mu, p)};
}

double origin_of(const PotentialMeasure& mu) {
  const double l = mu.spec().left_endpoint;
  return (!mu.spec().is_radial() && std::isfinite(l)) ? l : 0.0;
}

InequalityReport sp_impl(const char* tag, const PotentialMeasure& mu, const BetaProfile& beta,
                         std::span<const double> r_grid, const std::vector<DensityPerturbation>& fam,
                         const WeightProfile* weight) {
  for (double r : r_grid) {
    if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorCode::kInvalidArgument, "r grid must be positive");
  }
  InequalityReport rep(tag, 1.0);
  for (const DensityPerturbation& p : fam) {
    const SpParts s = sp_parts(mu, p, weight);
    for (double r : r_grid) {
      rep.add(at_r(p.id(), r), p.param(), s.mass, r * s.energy + beta(r) * s.abs_mean * s.abs_mean);
    }
  }
  return rep;
}

}  // namespace

InequalityReport check_super_poincare(const PotentialMeasure& mu, const BetaProfile& beta,
                                      std::span<const double> r_grid,
                                      const std::vector<DensityPerturbation>& fam, const WeightProfile* weight) {
  return sp_impl("sp", mu, beta, r_grid, fam, weight);
}

InequalityReport check_wlsi(const PotentialMeasure& mu, const WeightProfile* weight,
                            const std::vector<DensityPerturbation>& fam, std::optional<double> C_target) {
  InequalityReport rep("wlsi", C_target);
  for (const DensityPerturbation& p : fam) {
    rep.add(p.id(), p.param(), entropy(mu, p), energy(mu, p, weight));
  }
  return rep;
}

InequalityReport check_talagrand(const PotentialMeasure& mu, const std::vector<DensityPerturbation>& fam,
                                 const TalagrandOptions& opt) {
  if (!(opt.p >= 1.0)) throw Error(ErrorCode::kNonConvexCost, "Talagrand cost needs p >= 1");
  const DistanceEvaluator& d = opt.dist;
  std::function<double(double)> Y;
  switch (d.mode()) {
    case DistanceMode::kEuclidean:
      Y = [](double x) { return x; };
      break;
    case DistanceMode::kPullback:
      if (d.map() == nullptr) throw Error(ErrorCode::kInvalidArgument, "pullback distance without a map");
      break;
    case DistanceMode::kWeightedGeodesic: {
      if (mu.spec().is_radial()) {
        throw Error(ErrorCode::kModeUnsupported, "weighted geodesic transport is one-dimensional");
      }
      const double o = origin_of(mu);
      Y = [d, o](double x) { return x >= o ? d(o, x) : -d(o, x); };
      break;
    }
    default:
      throw Error(ErrorCode::kModeUnsupported,
                  std::string("no monotone coordinate for distance ") + distance_mode_name(d.mode()));
  }
  const CostFn cost = CostFn::power(opt.p);
  std::shared_ptr<const QuantileSource> base;
  if (Y) base = mapped_source(density_source(mu.line_ptr()), Y);

  InequalityReport rep("talagrand", opt.C_target);
  for (const DensityPerturbation& p : fam) {
    const double ent = entropy(mu, p);
    if (ent < 1e-12) {
      rep.add(p.id(), p.param(), 0.0, opt.rhs_scale * ent, true);
      continue;
    }
    double lhs;
    if (Y) {
      const auto nu = mapped_source(density_source(perturbed_line(mu, p)), Y);
      lhs = w_quantile_1d(*base, *nu, cost).raw;
    } else {
      lhs = std::pow(w_pullback(mu, p, *d.map(), opt.p), opt.p);
    }
    rep.add(p.id(), p.param(), lhs, opt.rhs_scale * ent);
  }
  return rep;
}

InequalityReport check_hwi(const PotentialMeasure& mu, const WeightProfile* weight, const TransportMap& map,
                           const std::vector<DensityPerturbation>& fam, HwiNormalization norm) {
  if (mu.spec().is_radial() && std::max(mu.Ch(), map.Ch()) > 1.0 + 1e-9) {
    throw Error(ErrorCode::kNonConstantAngular, "HWI needs a constant angular mass (Ch = 1)");
  }
  InequalityReport rep("hwi", 1.0);
  for (const DensityPerturbation& p : fam) {
    double W = w_pullback(mu, p, map, 2.0);
    if (norm == HwiNormalization::kHalfSquaredCost) W /= std::sqrt(2.0);
    const double ent = entropy(mu, p);
    const double E = std::max(0.0, energy(mu, p, weight));
    rep.add(p.id(), p.param(), ent + W * W, 2.0 * std::sqrt(2.0 * E) * W);
  }
  return rep;
}

InequalityReport check_chain(const PotentialMeasure& mu, const WeightProfile& weight, double c,
                             std::span<const double> r_grid, const std::vector<DensityPerturbation>& fam) {
  return sp_impl("chain", mu, BetaProfile::exp_power(c, 1.0), r_grid, fam, &weight);
}

double fit_chain_c(const PotentialMeasure& mu, const WeightProfile& weight, std::span<const double> r_grid,
                   const std::vector<DensityPerturbation>& fam) {
  double c = 1e-9;
  for (const DensityPerturbation& p : fam) {
    const SpParts s = sp_parts(mu, p, &weight);
    for (double r : r_grid) {
      const double gap = s.mass - r * s.energy;
      if (gap <= 0.0) continue;
      c = std::max(c, (std::log(gap) - 2.0 * std::log(s.abs_mean)) / (1.0 + 1.0 / r));
    }
  }
  return c;
}

EnvelopeResult envelope(const PotentialMeasure& mu, const WeightProfile& weight, double theta, double a,
                        double b, int n) {
  if (n < 2 || !(b > a)) throw Error(ErrorCode::kInvalidArgument, "envelope needs a < b and n >= 2");
  const DistFunctions dist(mu);
  EnvelopeResult out;
  out.min_value = std::numeric_limits<double>::infinity();
  out.max_value = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = a + (b - a) * i / (n - 1);
    const double v = weight(x, 0.0) * std::pow(1.0 + dist.radius(x), theta - 2.0);
    out.x.push_back(x);
    out.value.push_back(v);
    out.min_value = std::min(out.min_value, v);
    out.max_value = std::max(out.max_value, v);
  }
  out.c = std::max(out.max_value, 1.0 / out.min_value);
  return out;
}

}  // namespace transineq
