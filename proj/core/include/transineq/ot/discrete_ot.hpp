#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "transineq/measure/potential.hpp"
#include "transineq/ot/cost.hpp"

namespace transineq {

inline constexpr std::size_t kMaxOtPoints = 2048;

struct PlanEntry {
  std::size_t i = 0;
  std::size_t j = 0;
  double mass = 0.0;
};

struct TransportPlan {
  std::size_t n_src = 0;
  std::size_t n_dst = 0;
  std::vector<PlanEntry> entries;
  double total_cost = 0.0;
  /// Largest |row or column sum - prescribed mass|.
  double marginal_residual = 0.0;
  /// Most negative reduced cost c_ij + pi_i - pi_j (scaled by max |c|).
  double min_reduced_cost = 0.0;
  /// Largest |reduced cost| on the support (scaled by max |c|).
  double max_support_slack = 0.0;
  bool certified = false;

  void write_csv(std::ostream& os) const;
};

/// Exact optimal plan by successive shortest augmenting paths with node
/// potentials; the final potentials certify optimality via complementary
/// slackness. Throws SizeLimitExceeded above kMaxOtPoints per side.
TransportPlan discrete_ot(const GridMeasure& src, const GridMeasure& dst, const CostFn& cost);

/// Same on an explicit cost matrix (row-major, n x m).
TransportPlan discrete_ot(std::span<const double> src_mass, std::span<const double> dst_mass,
                          std::span<const double> cost_matrix);

}  // namespace transineq
