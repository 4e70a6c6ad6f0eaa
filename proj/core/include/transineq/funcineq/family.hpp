#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "transineq/measure/potential.hpp"
#include "transineq/ot/perturbation.hpp"

namespace transineq {

enum class FamilyTag { kExpTilts, kTranslates, kLipschitzBumps, kHermiteLike, kRadialProducts };

const char* family_tag_name(FamilyTag tag);
std::optional<FamilyTag> parse_family_tag(std::string_view name);

struct FamilyOptions {
  /// Grid density multiplier: every parameter step is divided by `refine`.
  int refine = 1;
  /// Exponent in (1, 2) for the comparison bumps (1 + rho(o, x_i))^kappa,
  /// kappa = (delta - 1) / (2 - delta).
  double delta_exp = 1.5;
  /// Parameter range for tilts and translates.
  double lambda_max = 2.0;
  /// Multiply radial members by (1 + 0.3 cos k angle), k = 1..3 (d = 2).
  bool angular = false;
};

struct TestFunctionFamily {
  FamilyTag tag = FamilyTag::kExpTilts;
  std::vector<PerturbationDef> members;
};

/// Members:
///   exp_tilts        f = e^{lambda x / 2}, lambda in [-lmax, lmax] step 0.1
///   translates       f^2 = e^{V(x - m) - V(x)}, m in [-lmax, lmax] step 0.1
///   lipschitz_bumps  dips (|x - x_i| ^ rho_i / 2)(1 + rho_i)^kappa and tents
///                    1 + (1 - |x - c| / w)_+, w in {0.5, 1, 2}
///   hermite_like     1 + eps He_k(x), k = 1..6, eps = 0.025 j, j = 1..4
///   radial_products  radial tilts and tents, optionally times an angular factor
/// Points are measured from o (origin, or the left endpoint of a half-line).
TestFunctionFamily make_family(const PotentialMeasure& mu, FamilyTag tag, const FamilyOptions& opt = {});

std::vector<DensityPerturbation> instantiate(const PotentialMeasure& mu, const TestFunctionFamily& fam);

/// Probabilists' Hermite polynomial He_k.
double hermite_he(int k, double x);

}  // namespace transineq
