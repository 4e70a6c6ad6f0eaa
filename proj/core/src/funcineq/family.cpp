#include "transineq/funcineq/family.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "transineq/errors.hpp"

namespace transineq {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string label(const char* fmt, double a, double b = 0.0) {
  char buf[96];
  std::snprintf(buf, sizeof buf, fmt, a, b);
  return buf;
}

// Parameters lo, lo + step, ..., hi with the step divided by `refine`.
std::vector<double> ladder(double lo, double hi, double step, int refine) {
  const double h = step / refine;
  const int n = static_cast<int>(std::lround((hi - lo) / h));
  std::vector<double> v;
  for (int i = 0; i <= n; ++i) {
    const double x = lo + i * h;
    v.push_back(std::abs(x) < 1e-12 ? 0.0 : x);
  }
  return v;
}

double sgn(double x) { return (x > 0.0) - (x < 0.0); }

struct Frame {
  bool radial;
  double origin;
  bool two_sided;
};

Frame frame_of(const PotentialMeasure& mu) {
  const PotentialSpec& s = mu.spec();
  if (s.is_radial()) return {true, 0.0, false};
  if (std::isfinite(s.left_endpoint)) return {false, s.left_endpoint, false};
  return {false, 0.0, true};
}

std::vector<double> centers(const Frame& fr, int refine) {
  std::vector<double> c;
  for (double off : ladder(0.5, 4.0, 0.5, refine)) {
    if (fr.two_sided) c.push_back(fr.origin - off);
    c.push_back(fr.origin + off);
  }
  return c;
}

PerturbationDef tilt(double lambda, const std::string& fam) {
  PerturbationDef d;
  d.family = fam;
  d.id = label("tilt(%+.4f)", lambda);
  d.param = lambda;
  d.f = [lambda](double x, double) { return std::exp(0.5 * lambda * x); };
  d.df_r = [lambda](double x, double) { return 0.5 * lambda * std::exp(0.5 * lambda * x); };
  d.log_abs_f = [lambda](double x, double) { return 0.5 * lambda * x; };
  d.log_grad_sq = [lambda](double x, double) {
    return lambda == 0.0 ? -kInf : 2.0 * std::log(0.5 * std::abs(lambda)) + lambda * x;
  };
  return d;
}

PerturbationDef tent(double c, double w, const std::string& fam) {
  PerturbationDef d;
  d.family = fam;
  d.id = label("tent(%+.4f;w=%.2f)", c, w);
  d.param = c;
  d.f = [c, w](double x, double) { return 1.0 + std::max(0.0, 1.0 - std::abs(x - c) / w); };
  d.df_r = [c, w](double x, double) { return std::abs(x - c) < w ? -sgn(x - c) / w : 0.0; };
  d.breaks = {c - w, c, c + w};
  return d;
}

PerturbationDef dip(double xi, double origin, double kappa, const std::string& fam) {
  const double rho = std::abs(xi - origin);
  const double K = std::pow(1.0 + rho, kappa);
  PerturbationDef d;
  d.family = fam;
  d.id = label("dip(%+.4f)", xi);
  d.param = xi;
  d.f = [xi, rho, K](double x, double) { return std::min(std::abs(x - xi), 0.5 * rho) * K; };
  d.df_r = [xi, rho, K](double x, double) { return std::abs(x - xi) < 0.5 * rho ? K * sgn(x - xi) : 0.0; };
  d.breaks = {xi - 0.5 * rho, xi, xi + 0.5 * rho};
  return d;
}

// g(x) (1 + 0.3 cos k angle).
PerturbationDef with_angle(PerturbationDef base, int k) {
  PerturbationDef d = base;
  d.id = base.id + label("*(1+0.3cos%.0fa)", k);
  d.angular = true;
  auto f = base.f;
  auto df = base.df_r;
  d.f = [f, k](double r, double a) { return f(r, a) * (1.0 + 0.3 * std::cos(k * a)); };
  d.df_r = [df, k](double r, double a) { return df(r, a) * (1.0 + 0.3 * std::cos(k * a)); };
  d.df_angle = [f, k](double r, double a) { return f(r, a) * (-0.3 * k * std::sin(k * a)); };
  d.log_abs_f = {};
  d.log_grad_sq = {};
  return d;
}

}  // namespace

const char* family_tag_name(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::kExpTilts:
      return "exp_tilts";
    case FamilyTag::kTranslates:
      return "translates";
    case FamilyTag::kLipschitzBumps:
      return "lipschitz_bumps";
    case FamilyTag::kHermiteLike:
      return "hermite_like";
    case FamilyTag::kRadialProducts:
      return "radial_products";
  }
  return "unknown";
}

std::optional<FamilyTag> parse_family_tag(std::string_view name) {
  for (FamilyTag t : {FamilyTag::kExpTilts, FamilyTag::kTranslates, FamilyTag::kLipschitzBumps,
                      FamilyTag::kHermiteLike, FamilyTag::kRadialProducts}) {
    if (name == family_tag_name(t)) return t;
  }
  return std::nullopt;
}

double hermite_he(int k, double x) {
  if (k == 0) return 1.0;
  double a = 1.0, b = x;
  for (int n = 1; n < k; ++n) {
    const double c = x * b - n * a;
    a = b;
    b = c;
  }
  return b;
}

TestFunctionFamily make_family(const PotentialMeasure& mu, FamilyTag tag, const FamilyOptions& opt) {
  if (opt.refine < 1) throw Error(ErrorCode::kInvalidArgument, "refine must be >= 1");
  if (!(opt.delta_exp > 1.0 && opt.delta_exp < 2.0)) {
    throw Error(ErrorCode::kInvalidArgument, "delta_exp must lie in (1, 2)");
  }
  const Frame fr = frame_of(mu);
  const std::string fam = family_tag_name(tag);
  TestFunctionFamily out;
  out.tag = tag;
  auto& m = out.members;
  switch (tag) {
    case FamilyTag::kExpTilts:
      for (double l : ladder(-opt.lambda_max, opt.lambda_max, 0.1, opt.refine)) m.push_back(tilt(l, fam));
      break;
    case FamilyTag::kTranslates: {
      if (fr.radial) throw Error(ErrorCode::kInvalidArgument, "translates are one-dimensional");
      const PotentialSpec spec = mu.spec();
      for (double s : ladder(-opt.lambda_max, opt.lambda_max, 0.1, opt.refine)) {
        PerturbationDef d;
        d.family = fam;
        d.id = label("translate(%+.4f)", s);
        d.param = s;
        d.log_abs_f = [spec, s](double x, double) { return 0.5 * (spec.V(x - s) - spec.V(x)); };
        d.f = [spec, s](double x, double) { return std::exp(0.5 * (spec.V(x - s) - spec.V(x))); };
        d.df_r = [spec, s](double x, double) {
          return 0.5 * (spec.dV(x - s) - spec.dV(x)) * std::exp(0.5 * (spec.V(x - s) - spec.V(x)));
        };
        d.log_grad_sq = [spec, s](double x, double) {
          const double g = 0.5 * (spec.dV(x - s) - spec.dV(x));
          return g == 0.0 ? -kInf : 2.0 * std::log(std::abs(g)) + spec.V(x - s) - spec.V(x);
        };
        for (double k : spec.kinks()) {
          if (std::isfinite(k)) {
            d.breaks.push_back(k);
            d.breaks.push_back(k + s);
          }
        }
        m.push_back(std::move(d));
      }
      break;
    }
    case FamilyTag::kLipschitzBumps: {
      const double kappa = (opt.delta_exp - 1.0) / (2.0 - opt.delta_exp);
      const std::vector<double> cs = centers(fr, opt.refine);
      for (double c : cs) m.push_back(dip(c, fr.origin, kappa, fam));
      std::vector<double> tc = cs;
      tc.insert(tc.begin(), fr.origin);
      for (double c : tc) {
        for (double w : {0.5, 1.0, 2.0}) m.push_back(tent(c, w, fam));
      }
      break;
    }
    case FamilyTag::kHermiteLike:
      for (int k = 1; k <= 6; ++k) {
        for (int j = 1; j <= 4 * opt.refine; ++j) {
          const double eps = 0.025 * j / opt.refine;
          PerturbationDef d;
          d.family = fam;
          d.id = label("hermite(k=%.0f;eps=%.4f)", k, eps);
          d.param = eps;
          d.f = [k, eps](double x, double) { return 1.0 + eps * hermite_he(k, x); };
          d.df_r = [k, eps](double x, double) { return eps * k * hermite_he(k - 1, x); };
          m.push_back(std::move(d));
        }
      }
      break;
    case FamilyTag::kRadialProducts: {
      if (!fr.radial) throw Error(ErrorCode::kInvalidArgument, "radial_products need a radial measure");
      std::vector<PerturbationDef> base;
      for (double l : ladder(-opt.lambda_max, opt.lambda_max, 0.25, opt.refine)) base.push_back(tilt(l, fam));
      for (double c : ladder(0.0, 3.0, 0.5, opt.refine)) {
        for (double w : {0.5, 1.0, 2.0}) base.push_back(tent(c, w, fam));
      }
      for (auto& d : base) {
        if (opt.angular && mu.spec().dim == 2) {
          for (int k = 1; k <= 3; ++k) m.push_back(with_angle(d, k));
        }
        m.push_back(std::move(d));
      }
      break;
    }
  }
  return out;
}

std::vector<DensityPerturbation> instantiate(const PotentialMeasure& mu, const TestFunctionFamily& fam) {
  std::vector<DensityPerturbation> out;
  out.reserve(fam.members.size());
  for (const PerturbationDef& d : fam.members) out.emplace_back(mu, d);
  return out;
}

}  // namespace transineq
