#include "transineq/funcineq/beta_estimate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "transineq/errors.hpp"

namespace transineq {
namespace {

constexpr int kMaxIter = 20000;
constexpr int kIndicatorSeeds = 8;

// Tridiagonal Dirichlet form: E(f) = sum_k a_k (f_{k+1} - f_k)^2.
struct Problem {
  std::vector<double> m;
  std::vector<double> a;
  double r = 0.0;

  std::size_t n() const { return m.size(); }

  double value(std::span<const double> f) const {
    double s = 0.0, e = 0.0;
    for (std::size_t i = 0; i < n(); ++i) s += m[i] * f[i] * f[i];
    for (std::size_t k = 0; k + 1 < n(); ++k) {
      const double d = f[k + 1] - f[k];
      e += a[k] * d * d;
    }
    return s - r * e;
  }

  // Gradient of J in the m-weighted inner product: 2 (f - r M^{-1} L f).
  void gradient(std::span<const double> f, std::vector<double>& g) const {
    for (std::size_t i = 0; i < n(); ++i) {
      double lf = 0.0;
      if (i > 0) lf += a[i - 1] * (f[i] - f[i - 1]);
      if (i + 1 < n()) lf += a[i] * (f[i] - f[i + 1]);
      g[i] = 2.0 * (f[i] - r * lf / m[i]);
    }
  }

  // Gershgorin bound on the spectrum of 2 M^{-1}(M - rL).
  double lipschitz() const {
    double lip = 2.0;
    for (std::size_t i = 0; i < n(); ++i) {
      double li = 0.0;
      if (i > 0) li += a[i - 1];
      if (i + 1 < n()) li += a[i];
      lip = std::max(lip, 2.0 * std::abs(1.0 - 2.0 * r * li / m[i]));
      lip = std::max(lip, 2.0 * (1.0 + 2.0 * r * li / m[i]));
    }
    return lip;
  }
};

Problem make_problem(const GridMeasure& grid, double r) {
  if (grid.polar()) throw Error(ErrorCode::kInvalidArgument, "beta estimation needs a one-dimensional grid");
  if (grid.size() > kMaxBetaGrid) {
    throw Error(ErrorCode::kSizeLimitExceeded, "beta estimation is limited to 4096 points");
  }
  if (grid.size() == 0) throw Error(ErrorCode::kInvalidArgument, "empty grid");
  if (!(r >= 0.0) || !std::isfinite(r)) throw Error(ErrorCode::kInvalidArgument, "r must be >= 0");
  Problem p;
  p.r = r;
  p.m = grid.masses;
  const double total = std::accumulate(p.m.begin(), p.m.end(), 0.0);
  for (double& v : p.m) {
    if (!(v > 0.0)) throw Error(ErrorCode::kInvalidArgument, "grid masses must be positive");
    v /= total;
  }
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    const double h = grid.points[k + 1] - grid.points[k];
    if (!(h > 0.0)) throw Error(ErrorCode::kInvalidArgument, "grid points must increase");
    p.a.push_back(0.5 * (p.m[k] + p.m[k + 1]) / (h * h));
  }
  return p;
}

// m-weighted projection onto {f >= 0, sum m f = 1}: f = (g - tau)_+.
void project(const std::vector<double>& m, std::vector<double>& g) {
  std::vector<std::size_t> idx(g.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return g[i] > g[j]; });
  double mg = 0.0, ms = 0.0, tau = 0.0;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    mg += m[idx[k]] * g[idx[k]];
    ms += m[idx[k]];
    tau = (mg - 1.0) / ms;
    const double next = k + 1 < idx.size() ? g[idx[k + 1]] : -std::numeric_limits<double>::infinity();
    if (next <= tau) break;
  }
  for (double& v : g) v = std::max(v - tau, 0.0);
}

void normalise(const std::vector<double>& m, std::vector<double>& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += m[i] * f[i];
  for (double& v : f) v /= s;
}

std::vector<double> ascend(const Problem& p, std::vector<double> f) {
  const double step = 1.0 / p.lipschitz();
  std::vector<double> g(p.n());
  double J = p.value(f);
  int quiet = 0;
  for (int it = 0; it < kMaxIter && quiet < 5; ++it) {
    p.gradient(f, g);
    for (std::size_t i = 0; i < p.n(); ++i) g[i] = f[i] + step * g[i];
    project(p.m, g);
    const double Jn = p.value(g);
    if (!(Jn >= J)) break;  // only numerical noise can decrease J with this step
    quiet = (Jn - J <= 1e-14 * std::max(1.0, std::abs(Jn))) ? quiet + 1 : 0;
    J = Jn;
    f.swap(g);
  }
  return f;
}

std::vector<std::vector<double>> seeds(const Problem& p, int restarts, std::mt19937_64& rng) {
  std::vector<std::vector<double>> out;
  out.emplace_back(p.n(), 1.0);
  std::exponential_distribution<double> expo(1.0);
  std::uniform_int_distribution<int> power(0, 2);
  for (int k = 0; k < restarts; ++k) {
    std::vector<double> f(p.n());
    const double e = std::ldexp(1.0, power(rng));
    for (double& v : f) v = std::pow(expo(rng), e);
    normalise(p.m, f);
    out.push_back(std::move(f));
  }
  // Indicator vertices e_i / m_i with the largest objective.
  std::vector<std::pair<double, std::size_t>> vert;
  for (std::size_t i = 0; i < p.n(); ++i) {
    double li = 0.0;
    if (i > 0) li += p.a[i - 1];
    if (i + 1 < p.n()) li += p.a[i];
    vert.push_back({(1.0 - p.r * li / p.m[i]) / p.m[i], i});
  }
  const std::size_t top = std::min<std::size_t>(kIndicatorSeeds, vert.size());
  std::partial_sort(vert.begin(), vert.begin() + top, vert.end(), std::greater<>());
  for (std::size_t k = 0; k < top; ++k) {
    std::vector<double> f(p.n(), 0.0);
    f[vert[k].second] = 1.0 / p.m[vert[k].second];
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<std::vector<double>> witnesses(const Problem& p, int restarts, std::mt19937_64& rng) {
  std::vector<std::vector<double>> out;
  for (auto& s : seeds(p, restarts, rng)) out.push_back(ascend(p, std::move(s)));
  return out;
}

}  // namespace

double beta_objective(const GridMeasure& grid, double r, std::span<const double> f) {
  const Problem p = make_problem(grid, r);
  if (f.size() != p.n()) throw Error(ErrorCode::kInvalidArgument, "witness size differs from the grid");
  return p.value(f);
}

BetaEstimate estimate_beta(const GridMeasure& grid, double r, int restarts, std::uint64_t seed) {
  const Problem p = make_problem(grid, r);
  std::mt19937_64 rng(seed);
  BetaEstimate best;
  best.witness.assign(p.n(), 1.0);
  best.value = p.value(best.witness);
  for (auto& w : witnesses(p, std::max(restarts, 0), rng)) {
    const double v = p.value(w);
    if (v > best.value) {
      best.value = v;
      best.witness = std::move(w);
    }
  }
  return best;
}

BetaProfile estimate_beta_table(const GridMeasure& grid, std::span<const double> r_grid, int restarts,
                                std::uint64_t seed) {
  if (r_grid.empty()) throw Error(ErrorCode::kInvalidArgument, "empty r grid");
  std::mt19937_64 rng(seed);
  std::vector<std::vector<double>> pool;
  std::vector<Problem> probs;
  for (double r : r_grid) {
    probs.push_back(make_problem(grid, r));
    for (auto& w : witnesses(probs.back(), std::max(restarts, 0), rng)) pool.push_back(std::move(w));
  }
  std::vector<double> beta;
  for (const Problem& p : probs) {
    double best = 1.0;
    for (const auto& w : pool) best = std::max(best, p.value(w));
    beta.push_back(best);
  }
  return BetaProfile::table(std::vector<double>(r_grid.begin(), r_grid.end()), std::move(beta));
}

}  // namespace transineq
