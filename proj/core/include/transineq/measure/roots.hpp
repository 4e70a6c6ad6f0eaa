#pragma once

#include <algorithm>
#include <cmath>
#include <utility>

namespace transineq::roots {

/// Root of an increasing function on [a, b]. `f(x)` returns (value, slope).
/// Newton steps are taken when they stay inside the current bracket,
/// bisection otherwise. Returns the left end when f(a) >= 0 (flat or
/// degenerate brackets resolve to the left endpoint).
template <class F>
double safeguarded_newton(const F& f, double a, double b, double rel_tol) {
  const double abs_tol = 1e-16 * (b - a);
  const auto [fa, da] = f(a);
  if (fa >= 0.0) return a;
  const auto [fb, db] = f(b);
  if (fb <= 0.0) return b;
  double x = (std::isfinite(fa) && std::isfinite(fb)) ? a + (b - a) * (-fa / (fb - fa)) : 0.5 * (a + b);
  if (!(x > a && x < b)) x = 0.5 * (a + b);
  (void)da;
  (void)db;
  for (int iter = 0; iter < 300; ++iter) {
    const auto [fx, dx] = f(x);
    if (fx == 0.0) return x;
    if (fx < 0.0) {
      a = x;
    } else {
      b = x;
    }
    double xn = x - fx / dx;
    if (!std::isfinite(xn) || !(xn > a && xn < b)) xn = 0.5 * (a + b);
    const double tol = rel_tol * std::abs(xn) + abs_tol;
    if (std::abs(xn - x) <= tol || b - a <= tol) return xn;
    x = xn;
  }
  return 0.5 * (a + b);
}

/// Bisection for an increasing predicate-free function: smallest x in [a, b]
/// with f(x) >= target, to absolute width `tol`.
template <class F>
double bisect_increasing(const F& f, double target, double a, double b, double tol) {
  for (int iter = 0; iter < 400 && b - a > tol; ++iter) {
    const double m = 0.5 * (a + b);
    if (f(m) >= target) {
      b = m;
    } else {
      a = m;
    }
  }
  return b;
}

}  // namespace transineq::roots
