#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <utility>
#include <vector>

namespace transineq::quad {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached rule of the given order (computed once by Newton iteration on P_n).
const Rule& gauss_legendre(int order);

inline constexpr int kPanelOrder = 20;

/// Fixed-order Gauss-Legendre on [a, b].
template <class F>
double fixed(const F& f, double a, double b, int order = kPanelOrder) {
  const Rule& rule = gauss_legendre(order);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return sum * half;
}

struct Options {
  double rel_tol = 1e-11;
  double abs_tol = 1e-300;
  int max_depth = 40;
  int max_panels = 1 << 16;
};

struct Result {
  double value = 0.0;
  double error = 0.0;
  int panels = 0;
  bool converged = true;
};

/// Adaptive bisection of Gauss-Legendre panels. A panel is accepted once the
/// parent estimate and the sum of its two halves agree to
/// max(rel_tol * |running total|, abs_tol).
template <class F>
Result adaptive(const F& f, double a, double b, const Options& opt = {}) {
  Result out;
  if (!(b > a)) return out;
  struct Item {
    double lo, hi, est;
    int depth;
  };
  std::vector<Item> stack;
  const double whole = fixed(f, a, b);
  stack.push_back({a, b, whole, 0});
  const double scale_hint = std::abs(whole);
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    const double mid = 0.5 * (it.lo + it.hi);
    const double left = fixed(f, it.lo, mid);
    const double right = fixed(f, mid, it.hi);
    const double refined = left + right;
    const double diff = std::abs(refined - it.est);
    const double scale = std::max(scale_hint, std::abs(out.value + refined));
    if (diff <= std::max(opt.rel_tol * scale, opt.abs_tol) ||
        it.depth >= opt.max_depth || out.panels >= opt.max_panels) {
      if (diff > std::max(opt.rel_tol * scale, opt.abs_tol)) out.converged = false;
      out.value += refined;
      out.error += diff;
      ++out.panels;
      continue;
    }
    stack.push_back({mid, it.hi, right, it.depth + 1});
    stack.push_back({it.lo, mid, left, it.depth + 1});
  }
  return out;
}

/// Adaptive integration over consecutive intervals of `breaks` (sorted).
template <class F>
Result adaptive_piecewise(const F& f, std::span<const double> breaks,
                          const Options& opt = {}) {
  Result total;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i + 1] > breaks[i])) continue;
    Result r = adaptive(f, breaks[i], breaks[i + 1], opt);
    total.value += r.value;
    total.error += r.error;
    total.panels += r.panels;
    total.converged = total.converged && r.converged;
  }
  return total;
}

/// Merge extra breakpoints into a sorted base partition, keeping only
/// those strictly inside [base.front(), base.back()].
std::vector<double> merge_breaks(std::span<const double> base,
                                 std::span<const double> extra);

}  // namespace transineq::quad
