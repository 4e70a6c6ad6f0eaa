#include "transineq/ot/discrete_ot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <ostream>

#include "transineq/errors.hpp"

namespace transineq {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMassEps = 1e-18;

std::array<double, 2> cartesian(const GridMeasure& g, std::size_t k) {
  return {g.points[k] * std::cos(g.angles[k]), g.points[k] * std::sin(g.angles[k])};
}

}  // namespace

void TransportPlan::write_csv(std::ostream& os) const {
  const auto old = os.precision(17);
  os << "i,j,mass\n";
  for (const PlanEntry& e : entries) os << e.i << ',' << e.j << ',' << e.mass << '\n';
  os.precision(old);
}

TransportPlan discrete_ot(const GridMeasure& src, const GridMeasure& dst, const CostFn& cost) {
  if (src.size() > kMaxOtPoints || dst.size() > kMaxOtPoints) {
    throw Error(ErrorCode::kSizeLimitExceeded, "discrete_ot is limited to 2048 points per side");
  }
  if (src.polar() != dst.polar()) {
    throw Error(ErrorCode::kInvalidArgument, "grids must both be linear or both polar");
  }
  const std::size_t n = src.size(), m = dst.size();
  std::vector<double> c(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (src.polar()) {
        const auto a = cartesian(src, i), b = cartesian(dst, j);
        c[i * m + j] = cost(std::span<const double>(a), std::span<const double>(b));
      } else {
        c[i * m + j] = cost(src.points[i], dst.points[j]);
      }
    }
  }
  return discrete_ot(src.masses, dst.masses, c);
}

TransportPlan discrete_ot(std::span<const double> src_mass, std::span<const double> dst_mass,
                          std::span<const double> cost_matrix) {
  const std::size_t n = src_mass.size(), m = dst_mass.size();
  if (n > kMaxOtPoints || m > kMaxOtPoints) {
    throw Error(ErrorCode::kSizeLimitExceeded, "discrete_ot is limited to 2048 points per side");
  }
  if (n == 0 || m == 0 || cost_matrix.size() != n * m) {
    throw Error(ErrorCode::kInvalidArgument, "cost matrix must be n x m with n, m >= 1");
  }
  for (double v : src_mass) {
    if (!(v >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "masses must be non-negative");
  }
  for (double v : dst_mass) {
    if (!(v >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "masses must be non-negative");
  }
  const auto C = [&](std::size_t i, std::size_t j) { return cost_matrix[i * m + j]; };

  std::vector<double> supply(src_mass.begin(), src_mass.end());
  std::vector<double> demand(dst_mass.begin(), dst_mass.end());
  std::vector<double> flow(n * m, 0.0);
  std::vector<std::vector<std::size_t>> support(m);  // sources with flow into sink j

  // Node k < n is source k, node n + j is sink j.
  const std::size_t V = n + m;
  std::vector<double> pi(V, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    double lo = kInf;
    for (std::size_t i = 0; i < n; ++i) lo = std::min(lo, C(i, j));
    pi[n + j] = lo;
  }

  std::vector<double> dist(V);
  std::vector<std::size_t> prev(V);
  std::vector<char> done(V);
  const std::size_t kNone = V;

  auto remaining = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  };

  for (std::size_t iter = 0; iter < 64 * (n + m) * (n + m); ++iter) {
    if (remaining(supply) <= kMassEps || remaining(demand) <= kMassEps) break;
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(prev.begin(), prev.end(), kNone);
    std::fill(done.begin(), done.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (supply[i] > kMassEps) dist[i] = 0.0;
    }
    double target_dist = kInf;
    std::size_t target = kNone;
    for (;;) {
      std::size_t u = kNone;
      double best = kInf;
      for (std::size_t v = 0; v < V; ++v) {
        if (!done[v] && dist[v] < best) {
          best = dist[v];
          u = v;
        }
      }
      if (u == kNone) break;
      done[u] = 1;
      if (u >= n && demand[u - n] > kMassEps) {
        target = u;
        target_dist = dist[u];
        break;
      }
      if (u < n) {
        for (std::size_t j = 0; j < m; ++j) {
          const std::size_t v = n + j;
          if (done[v]) continue;
          const double nd = dist[u] + std::max(0.0, C(u, j) + pi[u] - pi[v]);
          if (nd < dist[v]) {
            dist[v] = nd;
            prev[v] = u;
          }
        }
      } else {
        const std::size_t j = u - n;
        for (std::size_t i : support[j]) {
          if (done[i]) continue;
          const double nd = dist[u] + std::max(0.0, -C(i, j) + pi[u] - pi[i]);
          if (nd < dist[i]) {
            dist[i] = nd;
            prev[i] = u;
          }
        }
      }
    }
    if (target == kNone) break;
    for (std::size_t v = 0; v < V; ++v) pi[v] += std::min(dist[v], target_dist);

    // Bottleneck along the path.
    double amount = demand[target - n];
    std::size_t v = target;
    while (prev[v] != kNone) {
      const std::size_t u = prev[v];
      if (u >= n) amount = std::min(amount, flow[v * m + (u - n)]);  // backward arc u=sink -> v=source
      v = u;
    }
    amount = std::min(amount, supply[v]);
    supply[v] -= amount;
    if (supply[v] <= kMassEps) supply[v] = 0.0;
    demand[target - n] -= amount;
    if (demand[target - n] <= kMassEps) demand[target - n] = 0.0;
    v = target;
    while (prev[v] != kNone) {
      const std::size_t u = prev[v];
      if (u < n) {
        const std::size_t j = v - n;
        if (flow[u * m + j] == 0.0) support[j].push_back(u);
        flow[u * m + j] += amount;
      } else {
        const std::size_t j = u - n;
        double& f = flow[v * m + j];
        f -= amount;
        if (f <= kMassEps) {
          f = 0.0;
          auto& s = support[j];
          s.erase(std::remove(s.begin(), s.end(), v), s.end());
        }
      }
      v = u;
    }
  }

  TransportPlan plan;
  plan.n_src = n;
  plan.n_dst = m;
  double cmax = 0.0;
  for (double x : cost_matrix) cmax = std::max(cmax, std::abs(x));
  const double scale = std::max(cmax, 1e-300);
  std::vector<double> row(n, 0.0), col(m, 0.0);
  double min_reduced = kInf, max_slack = 0.0;
  long double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double f = flow[i * m + j];
      const double rc = (C(i, j) + pi[i] - pi[n + j]) / scale;
      min_reduced = std::min(min_reduced, rc);
      if (f > 0.0) {
        plan.entries.push_back({i, j, f});
        total += static_cast<long double>(f) * C(i, j);
        row[i] += f;
        col[j] += f;
        max_slack = std::max(max_slack, std::abs(rc));
      }
    }
  }
  double resid = 0.0;
  for (std::size_t i = 0; i < n; ++i) resid = std::max(resid, std::abs(row[i] - src_mass[i]));
  for (std::size_t j = 0; j < m; ++j) resid = std::max(resid, std::abs(col[j] - dst_mass[j]));
  plan.total_cost = static_cast<double>(total);
  plan.marginal_residual = resid;
  plan.min_reduced_cost = min_reduced;
  plan.max_support_slack = max_slack;
  plan.certified = min_reduced >= -1e-9 && max_slack <= 1e-9 && resid <= 1e-9;
  return plan;
}

}  // namespace transineq
