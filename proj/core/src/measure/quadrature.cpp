#include "transineq/measure/quadrature.hpp"

#include <map>
#include <mutex>
#include <numbers>

#include "transineq/errors.hpp"

namespace transineq {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kUnknownIdentifier: return "UnknownIdentifier";
    case ErrorCode::kNonIntegrable: return "NonIntegrable";
    case ErrorCode::kQuantileOutOfRange: return "QuantileOutOfRange";
    case ErrorCode::kInverseOutOfRange: return "InverseOutOfRange";
    case ErrorCode::kAngularUnbounded: return "AngularUnbounded";
    case ErrorCode::kEtaUnbounded: return "EtaUnbounded";
    case ErrorCode::kModeUnsupported: return "ModeUnsupported";
    case ErrorCode::kNonConvexCost: return "NonConvexCost";
    case ErrorCode::kNonRadialPerturbation: return "NonRadialPerturbation";
    case ErrorCode::kSizeLimitExceeded: return "SizeLimitExceeded";
    case ErrorCode::kAllInfinite: return "AllInfinite";
    case ErrorCode::kNonConstantAngular: return "NonConstantAngular";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kQuadratureFailure: return "QuadratureFailure";
    case ErrorCode::kConfigError: return "ConfigError";
  }
  return "Unknown";
}

namespace quad {
namespace {

Rule compute_rule(int n) {
  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace

const Rule& gauss_legendre(int order) {
  static std::mutex mu;
  static std::map<int, Rule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, compute_rule(order)).first;
  return it->second;
}

std::vector<double> merge_breaks(std::span<const double> base,
                                 std::span<const double> extra) {
  std::vector<double> out(base.begin(), base.end());
  if (out.empty()) return out;
  const double lo = out.front();
  const double hi = out.back();
  for (double e : extra) {
    if (e > lo && e < hi && std::isfinite(e)) out.push_back(e);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace quad
}  // namespace transineq
