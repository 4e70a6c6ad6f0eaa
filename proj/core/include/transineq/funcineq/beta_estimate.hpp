#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "transineq/funcineq/beta.hpp"
#include "transineq/measure/potential.hpp"

namespace transineq {

inline constexpr std::size_t kMaxBetaGrid = 4096;

/// Discrete objective J_r(f) = sum m_i f_i^2 - r E(f) with
/// E(f) = sum_k ((f_{k+1} - f_k) / (x_{k+1} - x_k))^2 (m_k + m_{k+1}) / 2,
/// over f >= 0 with sum m_i f_i = 1.
double beta_objective(const GridMeasure& grid, double r, std::span<const double> f);

struct BetaEstimate {
  double value = 1.0;
  std::vector<double> witness;
};

/// Lower bound on sup_f J_r(f) by projected gradient ascent from
/// `restarts` random nonnegative seeds and the best indicator vertices.
/// The value is J_r of the returned witness, so it is never above the
/// optimum and never below 1 (the constant function).
BetaEstimate estimate_beta(const GridMeasure& grid, double r, int restarts = 32, std::uint64_t seed = 42);

/// estimate_beta on every r of an increasing grid; each entry is the best
/// value over all witnesses found at any r, so the table is non-increasing.
BetaProfile estimate_beta_table(const GridMeasure& grid, std::span<const double> r_grid, int restarts = 32,
                                std::uint64_t seed = 42);

}  // namespace transineq
