#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "transineq/funcineq/beta.hpp"
#include "transineq/funcineq/family.hpp"
#include "transineq/funcineq/report.hpp"
#include "transineq/ot/perturbation.hpp"
#include "transineq/transport/distance.hpp"
#include "transineq/transport/map.hpp"
#include "transineq/transport/weight.hpp"

namespace transineq {

/// mu(f^2) <= r mu(alpha |grad f|^2) + beta(r) mu(|f|)^2 for every member
/// and r; a null weight means alpha = 1. Ids are "member@r=value".
InequalityReport check_super_poincare(const PotentialMeasure& mu, const BetaProfile& beta,
                                      std::span<const double> r_grid,
                                      const std::vector<DensityPerturbation>& fam,
                                      const WeightProfile* weight = nullptr);

/// Entropy against mu(alpha |grad fhat|^2).
InequalityReport check_wlsi(const PotentialMeasure& mu, const WeightProfile* weight,
                            const std::vector<DensityPerturbation>& fam,
                            std::optional<double> C_target = std::nullopt);

struct TalagrandOptions {
  /// Euclidean, pullback (through `dist.map()`) or weighted_geodesic (1-D).
  DistanceEvaluator dist = DistanceEvaluator::euclidean();
  /// lhs = W_p^p.
  double p = 2.0;
  /// rhs = rhs_scale * Ent.
  double rhs_scale = 1.0;
  std::optional<double> C_target;
};

/// W_p^rho(fhat^2 mu, mu)^p against the entropy, by the monotone coupling
/// in the coordinate Y(x) that makes rho(x, y) = |Y(x) - Y(y)|. Members
/// with entropy below 1e-12 are skipped. Throws ModeUnsupported for
/// distances without such a coordinate.
InequalityReport check_talagrand(const PotentialMeasure& mu, const std::vector<DensityPerturbation>& fam,
                                 const TalagrandOptions& opt = {});

enum class HwiNormalization {
  /// W is the plain quadratic Wasserstein distance.
  kLiteral,
  /// W is computed for the cost |x - y|^2 / 2.
  kHalfSquaredCost,
};

/// Ent + W^2 <= 2 sqrt(2 mu(alpha |grad fhat|^2)) W with W the quadratic
/// Wasserstein distance in the pullback coordinates of `map`. Radial
/// measures need Ch = 1 (NonConstantAngular otherwise).
InequalityReport check_hwi(const PotentialMeasure& mu, const WeightProfile* weight, const TransportMap& map,
                           const std::vector<DensityPerturbation>& fam,
                           HwiNormalization norm = HwiNormalization::kLiteral);

/// mu(f^2) <= r mu(alpha |grad f|^2) + e^{c(1 + 1/r)} mu(|f|)^2.
InequalityReport check_chain(const PotentialMeasure& mu, const WeightProfile& weight, double c,
                             std::span<const double> r_grid, const std::vector<DensityPerturbation>& fam);

/// Smallest c for which check_chain passes on the given members and radii.
double fit_chain_c(const PotentialMeasure& mu, const WeightProfile& weight, std::span<const double> r_grid,
                   const std::vector<DensityPerturbation>& fam);

struct EnvelopeResult {
  double min_value = 0.0;
  double max_value = 0.0;
  /// Smallest c with every sample in [1/c, c].
  double c = 0.0;
  std::vector<double> x;
  std::vector<double> value;
};

/// Samples alpha(x) (1 + rho(o, x))^{theta - 2} on n points of [a, b]
/// (radial profiles are evaluated at angle 0).
EnvelopeResult envelope(const PotentialMeasure& mu, const WeightProfile& weight, double theta, double a,
                        double b, int n = 401);

}  // namespace transineq
