#include "app/config.hpp"

#include <cmath>
#include <set>

#include "transineq/errors.hpp"

namespace transineq::app {
namespace {

using nlohmann::json;

// Object view that records which keys were read so unknown ones can be
// reported with their full path.
class Node {
 public:
  Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_, "expected an object");
  }

  const std::string& path() const { return path_; }
  std::string at(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  bool has(const std::string& key) const {
    seen_.insert(key);
    return j_.contains(key) && !j_.at(key).is_null();
  }

  const json& raw(const std::string& key) {
    seen_.insert(key);
    if (!j_.contains(key)) throw ConfigError(at(key), "required field is missing");
    return j_.at(key);
  }

  double num(const std::string& key, std::optional<double> def = std::nullopt) {
    seen_.insert(key);
    if (!has(key)) {
      if (def) return *def;
      throw ConfigError(at(key), "required number is missing");
    }
    const json& v = j_.at(key);
    if (!v.is_number()) throw ConfigError(at(key), "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(at(key), "expected a finite number");
    return x;
  }

  std::optional<double> opt_num(const std::string& key) {
    if (!has(key)) {
      seen_.insert(key);
      return std::nullopt;
    }
    return num(key);
  }

  double positive(const std::string& key, std::optional<double> def = std::nullopt) {
    const double x = num(key, def);
    if (!(x > 0.0)) throw ConfigError(at(key), "must be > 0");
    return x;
  }

  int integer(const std::string& key, std::optional<int> def = std::nullopt, int lo = 1) {
    seen_.insert(key);
    if (!has(key)) {
      if (def) return *def;
      throw ConfigError(at(key), "required integer is missing");
    }
    const json& v = j_.at(key);
    if (!v.is_number_integer()) throw ConfigError(at(key), "expected an integer");
    const long long x = v.get<long long>();
    if (x < lo || x > 1'000'000) throw ConfigError(at(key), "integer out of range");
    return static_cast<int>(x);
  }

  std::string str(const std::string& key, std::optional<std::string> def = std::nullopt) {
    seen_.insert(key);
    if (!has(key)) {
      if (def) return *def;
      throw ConfigError(at(key), "required string is missing");
    }
    const json& v = j_.at(key);
    if (!v.is_string()) throw ConfigError(at(key), "expected a string");
    return v.get<std::string>();
  }

  bool boolean(const std::string& key, bool def) {
    seen_.insert(key);
    if (!has(key)) return def;
    const json& v = j_.at(key);
    if (!v.is_boolean()) throw ConfigError(at(key), "expected true or false");
    return v.get<bool>();
  }

  Node child(const std::string& key) {
    seen_.insert(key);
    if (!has(key)) throw ConfigError(at(key), "required block is missing");
    return Node(j_.at(key), at(key));
  }

  void done() const {
    for (const auto& [k, v] : j_.items()) {
      if (!seen_.count(k)) throw ConfigError(at(k), "unknown field");
    }
  }

 private:
  const json& j_;
  std::string path_;
  mutable std::set<std::string> seen_;
};

std::vector<double> parse_r_grid(Node& n, const std::string& key, double r_max) {
  const json& v = n.raw(key);
  const std::string path = n.at(key);
  std::vector<double> out;
  if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::string p = path + "[" + std::to_string(i) + "]";
      if (!v[i].is_number()) throw ConfigError(p, "expected a number");
      const double x = v[i].get<double>();
      if (!(x > 0.0) || !std::isfinite(x)) throw ConfigError(p, "must be a positive finite number");
      if (!out.empty() && !(x > out.back())) throw ConfigError(p, "grid must increase");
      out.push_back(x);
    }
  } else if (v.is_object()) {
    Node g(v, path);
    const double lo = g.positive("lo");
    const double hi = g.positive("hi", r_max);
    const int cnt = g.integer("n", 10, 1);
    const bool log = g.boolean("log", true);
    g.done();
    if (!(hi >= lo)) throw ConfigError(g.at("hi"), "must be >= lo");
    if (cnt > 1 && !(hi > lo)) throw ConfigError(g.at("hi"), "must exceed lo when n > 1");
    for (int i = 0; i < cnt; ++i) {
      const double t = cnt == 1 ? 0.0 : static_cast<double>(i) / (cnt - 1);
      out.push_back(log ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t);
    }
  } else {
    throw ConfigError(path, "expected an array or {lo, hi, n}");
  }
  if (out.empty()) throw ConfigError(path, "grid must be non-empty");
  return out;
}

BetaConfig parse_beta(Node b, double r_max) {
  BetaConfig out;
  const std::string form = b.str("form");
  if (form == "exp_power") {
    out.form = BetaConfig::Form::kExpPower;
    out.c = b.positive("c");
    out.delta = b.positive("delta");
  } else if (form == "moments") {
    out.form = BetaConfig::Form::kMoments;
    out.K = b.num("K", 0.0);
    if (out.K < 0.0) throw ConfigError(b.at("K"), "must be >= 0");
    out.c0 = b.positive("c0", 1.0);
    out.r_grid = parse_r_grid(b, "r_grid", r_max);
    if (b.has("fit")) {
      Node f = b.child("fit");
      out.fit_delta = f.positive("delta");
      out.fit_lo = f.positive("r_lo", 1e-3);
      out.fit_hi = f.positive("r_hi", 1e-1);
      f.done();
    }
  } else if (form == "estimate") {
    out.form = BetaConfig::Form::kEstimate;
    out.n = b.integer("n", 256, 2);
    out.restarts = b.integer("restarts", 32, 0);
    out.r_grid = parse_r_grid(b, "r_grid", r_max);
  } else {
    throw ConfigError(b.at("form"), "expected exp_power, moments or estimate");
  }
  b.done();
  return out;
}

std::optional<CheckType> parse_type(const std::string& s) {
  for (CheckType t : {CheckType::kSp, CheckType::kWlsi, CheckType::kTalagrand, CheckType::kHwi,
                      CheckType::kDeviation, CheckType::kBetaEstimate, CheckType::kBetaFromMoments,
                      CheckType::kEnvelope}) {
    if (s == check_type_name(t)) return t;
  }
  return std::nullopt;
}

PotentialSpec parse_measure(Node m) {
  const std::string kind = m.str("kind", "one_dim");
  PotentialSpec spec;
  const bool has_text = m.has("potential"), has_power = m.has("power");
  if (has_text == has_power) throw ConfigError(m.path(), "give exactly one of potential or power");
  if (has_text) {
    const std::string text = m.str("potential");
    try {
      spec = parse_potential(text);
    } catch (const Error& e) {
      throw ConfigError(m.at("potential"), e.what());
    }
  } else {
    Node p = m.child("power");
    spec = power_potential(p.positive("a"), p.positive("theta"), p.num("b", 0.0));
    p.done();
  }
  if (kind == "one_dim") {
    spec.kind = MeasureKind::kOneDim;
    spec.dim = m.integer("dim", 1);
    if (spec.dim != 1) throw ConfigError(m.at("dim"), "one_dim measures have dim 1");
    if (m.has("left_endpoint")) spec.left_endpoint = m.num("left_endpoint");
  } else if (kind == "radial" || kind == "radial_angular") {
    spec.kind = kind == "radial" ? MeasureKind::kRadial : MeasureKind::kRadialAngular;
    spec.dim = m.integer("dim", 2);
    if (m.has("left_endpoint")) throw ConfigError(m.at("left_endpoint"), "only one_dim measures take it");
    if (spec.kind == MeasureKind::kRadialAngular) {
      if (spec.dim != 2) throw ConfigError(m.at("dim"), "radial_angular needs dim 2");
      spec.epsilon = m.num("epsilon", 0.0);
      spec.angular_mode = m.integer("angular_mode", 1);
    }
  } else {
    throw ConfigError(m.at("kind"), "expected one_dim, radial or radial_angular");
  }
  m.done();
  return spec;
}

void parse_weight(Node& c, CheckConfig& out, const PotentialSpec& spec, double r_max, bool required) {
  WeightConfig& w = out.weight;
  if (!c.has("weight")) {
    if (required) throw ConfigError(c.at("weight"), "a weight source is required");
    return;
  }
  const json& v = c.raw("weight");
  if (v.is_string()) {
    w.source = v.get<std::string>();
  } else {
    Node n(v, c.at("weight"));
    w.source = n.str("source");
    w.c = n.positive("c", 1.0);
    if (n.has("theta")) w.theta = n.positive("theta");
    if (n.has("beta")) w.beta = parse_beta(n.child("beta"), r_max);
    n.done();
  }
  const std::string path = c.at("weight");
  if (w.source == "none") {
    if (required) throw ConfigError(path, "a weight source is required");
  } else if (w.source == "thm411") {
    if (spec.is_radial()) throw ConfigError(path, "thm411 needs a one_dim measure");
  } else if (w.source == "thm412") {
    if (!spec.is_radial()) throw ConfigError(path, "thm412 needs a radial measure");
  } else if (w.source == "thm11") {
    if (!w.beta) throw ConfigError(path, "thm11 needs a beta block");
  } else if (w.source == "cor413") {
    if (!(v.is_object() && v.contains("theta"))) {
      if (!spec.power) throw ConfigError(path, "cor413 needs theta when the potential is not a power");
      w.theta = spec.power->theta;
    }
  } else {
    throw ConfigError(path, "expected none, thm411, thm412, thm11 or cor413");
  }
}

void parse_families(Node& c, CheckConfig& out, const PotentialSpec& spec) {
  const json& v = c.raw("family");
  const std::string path = c.at("family");
  std::vector<std::string> names;
  if (v.is_string()) {
    names.push_back(v.get<std::string>());
  } else if (v.is_array() && !v.empty()) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_string()) throw ConfigError(path + "[" + std::to_string(i) + "]", "expected a family tag");
      names.push_back(v[i].get<std::string>());
    }
  } else {
    throw ConfigError(path, "expected a family tag or a non-empty list of tags");
  }
  for (const std::string& s : names) {
    const auto tag = parse_family_tag(s);
    if (!tag) throw ConfigError(path, "unknown family '" + s + "'");
    if (*tag == FamilyTag::kTranslates && spec.is_radial()) {
      throw ConfigError(path, "translates need a one_dim measure");
    }
    if (*tag == FamilyTag::kRadialProducts && !spec.is_radial()) {
      throw ConfigError(path, "radial_products need a radial measure");
    }
    out.families.push_back(*tag);
  }
  FamilyOptions& o = out.family_options;
  o.refine = c.integer("refine", 1);
  o.lambda_max = c.positive("lambda_max", 2.0);
  o.delta_exp = c.num("delta_exp", 1.5);
  if (!(o.delta_exp > 1.0 && o.delta_exp < 2.0)) throw ConfigError(c.at("delta_exp"), "must lie in (1, 2)");
  o.angular = c.boolean("angular", false);
  if (o.angular && spec.kind != MeasureKind::kRadialAngular && !(spec.is_radial() && spec.dim == 2)) {
    throw ConfigError(c.at("angular"), "angular members need a planar radial measure");
  }
}

std::optional<double> parse_target(Node& c) {
  const auto t = c.opt_num("C_target");
  if (t && !(*t > 0.0)) throw ConfigError(c.at("C_target"), "must be > 0");
  return t;
}

CheckConfig parse_check(Node c, std::size_t index, const PotentialSpec& spec, const RunConfig& run) {
  CheckConfig out;
  out.path = c.path();
  const std::string type = c.str("type");
  const auto t = parse_type(type);
  if (!t) throw ConfigError(c.at("type"), "unknown check type '" + type + "'");
  out.type = *t;
  out.id = c.str("id", type + "_" + std::to_string(index));
  if (out.id.empty() || out.id.find_first_not_of("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_.-") !=
                            std::string::npos || out.id[0] == '.') {
    throw ConfigError(c.at("id"), "ids use letters, digits, '_', '.' and '-' and do not start with '.'");
  }
  const double r_max = run.r_max;
  auto one_dim_only = [&](const char* what) {
    if (spec.is_radial()) throw ConfigError(c.at("type"), std::string(what) + " needs a one_dim measure");
  };

  switch (out.type) {
    case CheckType::kSp:
      parse_weight(c, out, spec, r_max, false);
      parse_families(c, out, spec);
      out.beta = parse_beta(c.child("beta"), r_max);
      out.r_grid = parse_r_grid(c, "r_grid", r_max);
      if (out.beta->form == BetaConfig::Form::kEstimate && spec.is_radial()) {
        throw ConfigError(c.at("beta.form"), "beta estimation needs a one_dim measure");
      }
      break;
    case CheckType::kWlsi:
      parse_weight(c, out, spec, r_max, false);
      parse_families(c, out, spec);
      out.C_target = parse_target(c);
      break;
    case CheckType::kTalagrand: {
      parse_weight(c, out, spec, r_max, false);
      parse_families(c, out, spec);
      out.distance = c.str("distance", "euclidean");
      if (out.distance != "euclidean" && out.distance != "pullback" && out.distance != "weighted_geodesic") {
        throw ConfigError(c.at("distance"), "expected euclidean, pullback or weighted_geodesic");
      }
      if (out.distance == "weighted_geodesic" && (out.weight.source == "none" || spec.is_radial())) {
        throw ConfigError(c.at("distance"), "weighted_geodesic needs a weight and a one_dim measure");
      }
      out.p = c.num("p", 2.0);
      if (!(out.p >= 1.0)) throw ConfigError(c.at("p"), "must be >= 1");
      out.rhs_scale = c.positive("rhs_scale", 1.0);
      out.C_target = parse_target(c);
      break;
    }
    case CheckType::kHwi: {
      parse_weight(c, out, spec, r_max, false);
      parse_families(c, out, spec);
      const std::string norm = c.str("normalization", "literal");
      if (norm == "literal") {
        out.normalization = HwiNormalization::kLiteral;
      } else if (norm == "half_squared_cost") {
        out.normalization = HwiNormalization::kHalfSquaredCost;
      } else {
        throw ConfigError(c.at("normalization"), "expected literal or half_squared_cost");
      }
      break;
    }
    case CheckType::kDeviation: {
      one_dim_only("deviation");
      if (c.has("rate")) {
        Node r = c.child("rate");
        out.rate_C = r.positive("C", 1.0);
        r.done();
      }
      Node e = c.child("event");
      const std::string side = e.str("side", "lower");
      if (side != "lower" && side != "upper") throw ConfigError(e.at("side"), "expected lower or upper");
      out.event.side = side == "lower" ? HalfLine::Side::kLower : HalfLine::Side::kUpper;
      out.event.a = e.num("a");
      e.done();
      out.r_grid = parse_r_grid(c, "r_grid", r_max);
      out.distance = c.str("distance", "euclidean");
      if (out.distance != "euclidean" && out.distance != "pullback" && out.distance != "rho_tilde" &&
          out.distance != "power_comparison") {
        throw ConfigError(c.at("distance"), "expected euclidean, pullback, rho_tilde or power_comparison");
      }
      out.distance_delta = c.num("delta_exp", 1.5);
      if (!(out.distance_delta > 1.0 && out.distance_delta < 2.0)) {
        throw ConfigError(c.at("delta_exp"), "must lie in (1, 2)");
      }
      break;
    }
    case CheckType::kBetaEstimate: {
      one_dim_only("beta_estimate");
      BetaConfig b;
      b.form = BetaConfig::Form::kEstimate;
      b.n = c.integer("n", run.grid_n, 2);
      b.restarts = c.integer("restarts", 32, 0);
      b.r_grid = parse_r_grid(c, "r_grid", r_max);
      out.beta = b;
      break;
    }
    case CheckType::kBetaFromMoments: {
      BetaConfig b;
      b.form = BetaConfig::Form::kMoments;
      b.K = c.num("K", 0.0);
      if (b.K < 0.0) throw ConfigError(c.at("K"), "must be >= 0");
      b.c0 = c.positive("c0", 1.0);
      b.r_grid = parse_r_grid(c, "r_grid", r_max);
      if (c.has("fit")) {
        Node f = c.child("fit");
        b.fit_delta = f.positive("delta");
        b.fit_lo = f.positive("r_lo", 1e-3);
        b.fit_hi = f.positive("r_hi", 1e-1);
        f.done();
      }
      out.beta = b;
      break;
    }
    case CheckType::kEnvelope: {
      parse_weight(c, out, spec, r_max, true);
      if (c.has("theta")) {
        out.theta = c.positive("theta");
      } else if (spec.power) {
        out.theta = spec.power->theta;
      } else {
        throw ConfigError(c.at("theta"), "required when the potential is not a power");
      }
      Node iv = c.child("interval");
      out.a = iv.num("a");
      out.b = iv.num("b");
      iv.done();
      if (!(out.b > out.a)) throw ConfigError(c.at("interval.b"), "must exceed interval.a");
      out.n = c.integer("n", 401, 2);
      out.c_max = c.positive("c_max", 10.0);
      break;
    }
  }
  c.done();
  return out;
}

}  // namespace

const char* check_type_name(CheckType t) {
  switch (t) {
    case CheckType::kSp:
      return "sp";
    case CheckType::kWlsi:
      return "wlsi";
    case CheckType::kTalagrand:
      return "talagrand";
    case CheckType::kHwi:
      return "hwi";
    case CheckType::kDeviation:
      return "deviation";
    case CheckType::kBetaEstimate:
      return "beta_estimate";
    case CheckType::kBetaFromMoments:
      return "beta_from_moments";
    case CheckType::kEnvelope:
      return "envelope";
  }
  return "unknown";
}

RunConfig parse_config(const json& doc) {
  Node root(doc, "");
  RunConfig run;
  if (root.has("grid")) {
    Node g = root.child("grid");
    run.grid_n = g.integer("n", 256, 2);
    run.r_max = g.positive("r_max", 10.0);
    g.done();
  }
  run.measure = parse_measure(root.child("measure"));
  const json& checks = root.raw("checks");
  if (!checks.is_array() || checks.empty()) throw ConfigError("checks", "expected a non-empty list");
  std::set<std::string> ids;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const std::string path = "checks[" + std::to_string(i) + "]";
    CheckConfig c = parse_check(Node(checks[i], path), i, run.measure, run);
    if (!ids.insert(c.id).second) throw ConfigError(path + ".id", "duplicate id '" + c.id + "'");
    run.checks.push_back(std::move(c));
  }
  if (root.has("output")) {
    Node o = root.child("output");
    if (o.has("dir")) run.out_dir = o.str("dir");
    run.write_csv = o.boolean("csv", true);
    o.done();
  }
  root.done();
  return run;
}

RunConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  return parse_config(doc);
}

}  // namespace transineq::app
