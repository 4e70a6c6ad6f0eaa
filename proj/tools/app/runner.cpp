#include "app/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <ostream>
#include <sstream>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "app/config.hpp"
#include "transineq/errors.hpp"
#include "transineq/funcineq/beta_estimate.hpp"

#ifndef TRANSINEQ_VERSION
#define TRANSINEQ_VERSION "0.0.0"
#endif

namespace transineq::app {
namespace {

using nlohmann::ordered_json;

struct Outcome {
  std::string id;
  std::string type;
  std::string status = "pass";
  std::optional<double> C_est;
  std::optional<double> max_ratio;
  std::string argmax;
  std::size_t n_members = 0;
  std::size_t n_skipped = 0;
  double wallclock_ms = 0.0;
  std::string error_code;
  std::string error;
  std::string csv;
};

ordered_json number_or_null(std::optional<double> v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

struct Context {
  const PotentialMeasure& mu;
  std::uint64_t seed;
  bool strict;
};

BetaProfile build_beta(const BetaConfig& b, const Context& ctx, std::optional<double>* fitted = nullptr) {
  switch (b.form) {
    case BetaConfig::Form::kExpPower:
      return BetaProfile::exp_power(b.c, b.delta);
    case BetaConfig::Form::kMoments: {
      MomentsBetaOptions opt;
      opt.K = b.K;
      opt.c0 = b.c0;
      BetaProfile t = beta_from_moments(ctx.mu, b.r_grid, opt);
      if (!b.fit_delta) return t;
      const double c = fit_exp_power_c(t, *b.fit_delta, b.fit_lo, b.fit_hi);
      if (fitted) *fitted = c;
      return BetaProfile::exp_power(c, *b.fit_delta);
    }
    case BetaConfig::Form::kEstimate:
      return estimate_beta_table(discretize(ctx.mu, b.n, GridScheme::kEqualMass), b.r_grid, b.restarts,
                                 ctx.seed);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown beta form");
}

std::shared_ptr<const TransportMap> build_map(const PotentialMeasure& mu) {
  return std::make_shared<const TransportMap>(mu.spec().is_radial() ? TransportMap::build_radial(mu)
                                                                    : TransportMap::build_1d(mu));
}

std::shared_ptr<const WeightProfile> build_weight(const WeightConfig& w, const Context& ctx) {
  if (w.source == "none") return nullptr;
  if (w.source == "thm411") return std::make_shared<const WeightProfile>(weight_1d(ctx.mu));
  if (w.source == "thm412") return std::make_shared<const WeightProfile>(weight_radial(ctx.mu));
  if (w.source == "thm11") {
    return std::make_shared<const WeightProfile>(weight_thm11(ctx.mu, build_beta(*w.beta, ctx)));
  }
  return std::make_shared<const WeightProfile>(weight_cor413(ctx.mu, w.c, w.theta));
}

std::vector<DensityPerturbation> build_family(const CheckConfig& c, const Context& ctx) {
  std::vector<DensityPerturbation> out;
  for (FamilyTag t : c.families) {
    auto part = instantiate(ctx.mu, make_family(ctx.mu, t, c.family_options));
    std::move(part.begin(), part.end(), std::back_inserter(out));
  }
  return out;
}

void take_report(const InequalityReport& rep, const Context& ctx, Outcome& o) {
  const InequalitySummary s = rep.summary();
  o.C_est = s.C_est;
  o.max_ratio = s.max_ratio;
  o.argmax = s.argmax;
  o.n_members = s.n_members;
  o.n_skipped = s.n_skipped;
  if (s.n_members > 0 && s.n_skipped == s.n_members) {
    o.status = "skipped";
    o.C_est.reset();
    o.max_ratio.reset();
  }
  if (s.violation_count > 0 || (ctx.strict && s.n_skipped > 0)) o.status = "violation";
  std::ostringstream os;
  rep.write_csv(os);
  o.csv = os.str();
}

std::string table_csv(const BetaProfile& b) {
  std::ostringstream os;
  os.precision(17);
  os << "r,beta\n";
  for (std::size_t i = 0; i < b.r_grid().size(); ++i) os << b.r_grid()[i] << ',' << b.values()[i] << '\n';
  return os.str();
}

void execute(const CheckConfig& c, const Context& ctx, Outcome& o) {
  const PotentialMeasure& mu = ctx.mu;
  switch (c.type) {
    case CheckType::kSp: {
      const auto w = build_weight(c.weight, ctx);
      const BetaProfile beta = build_beta(*c.beta, ctx);
      take_report(check_super_poincare(mu, beta, c.r_grid, build_family(c, ctx), w.get()), ctx, o);
      break;
    }
    case CheckType::kWlsi: {
      const auto w = build_weight(c.weight, ctx);
      take_report(check_wlsi(mu, w.get(), build_family(c, ctx), c.C_target), ctx, o);
      break;
    }
    case CheckType::kTalagrand: {
      TalagrandOptions opt;
      if (c.distance == "pullback") {
        opt.dist = DistanceEvaluator::pullback(build_map(mu));
      } else if (c.distance == "weighted_geodesic") {
        opt.dist = DistanceEvaluator::weighted_geodesic(build_weight(c.weight, ctx));
      }
      opt.p = c.p;
      opt.rhs_scale = c.rhs_scale;
      opt.C_target = c.C_target;
      take_report(check_talagrand(mu, build_family(c, ctx), opt), ctx, o);
      break;
    }
    case CheckType::kHwi: {
      const auto w = build_weight(c.weight, ctx);
      const auto map = build_map(mu);
      take_report(check_hwi(mu, w.get(), *map, build_family(c, ctx), c.normalization), ctx, o);
      break;
    }
    case CheckType::kDeviation: {
      DeviationSpec spec;
      const double C = c.rate_C;
      spec.rate = [C](double t) { return std::sqrt(2.0 * C * std::max(t, 0.0)); };
      spec.event = c.event;
      if (c.distance == "pullback") {
        spec.dist = DistanceEvaluator::pullback(build_map(mu));
      } else if (c.distance == "rho_tilde") {
        spec.dist = DistanceEvaluator::rho_tilde(c.distance_delta);
      } else if (c.distance == "power_comparison") {
        spec.dist = DistanceEvaluator::power_comparison(c.distance_delta);
      }
      take_report(deviation_check(mu, spec, c.r_grid), ctx, o);
      break;
    }
    case CheckType::kBetaEstimate: {
      const BetaProfile b = build_beta(*c.beta, ctx);
      o.n_members = b.r_grid().size();
      for (std::size_t i = 1; i < b.values().size(); ++i) {
        if (b.values()[i] > b.values()[i - 1]) o.status = "violation";
      }
      o.csv = table_csv(b);
      break;
    }
    case CheckType::kBetaFromMoments: {
      BetaConfig table = *c.beta;
      table.fit_delta.reset();
      const BetaProfile b = build_beta(table, ctx);
      o.n_members = b.r_grid().size();
      if (c.beta->fit_delta) o.C_est = fit_exp_power_c(b, *c.beta->fit_delta, c.beta->fit_lo, c.beta->fit_hi);
      for (std::size_t i = 1; i < b.values().size(); ++i) {
        if (b.values()[i] > b.values()[i - 1]) o.status = "violation";
      }
      o.csv = table_csv(b);
      break;
    }
    case CheckType::kEnvelope: {
      const auto w = build_weight(c.weight, ctx);
      const EnvelopeResult e = envelope(mu, *w, c.theta, c.a, c.b, c.n);
      o.C_est = e.c;
      o.max_ratio = e.max_value;
      o.n_members = e.x.size();
      if (!(e.c <= c.c_max)) o.status = "violation";
      std::ostringstream os;
      os.precision(17);
      os << "x,value\n";
      for (std::size_t i = 0; i < e.x.size(); ++i) os << e.x[i] << ',' << e.value[i] << '\n';
      o.csv = os.str();
      break;
    }
  }
}

std::string utc_timestamp() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw Error(ErrorCode::kInvalidArgument, "cannot write " + p.string());
  f << text;
}

ordered_json base_report(const std::string& hash, std::uint64_t seed) {
  ordered_json r;
  r["version"] = TRANSINEQ_VERSION;
  r["config_hash"] = hash;
  r["seed"] = seed;
  r["timestamp"] = utc_timestamp();
  return r;
}

}  // namespace

std::string content_hash(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

int run(const RunFlags& flags, std::ostream& log) {
  std::ifstream in(flags.config_path, std::ios::binary);
  if (!in) {
    log << "error: cannot read config " << flags.config_path << '\n';
    return kExitError;
  }
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const std::string hash = content_hash(text);

  RunConfig cfg;
  std::filesystem::path out_dir = flags.out_dir.value_or("./out");
  try {
    cfg = parse_config_text(text);
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << '\n';
    ordered_json r = base_report(hash, flags.seed);
    r["error"] = {{"code", error_code_name(e.code())}, {"path", e.path()}, {"message", e.what()}};
    r["checks"] = ordered_json::array();
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (!ec) write_file(out_dir / "report.json", r.dump(2) + "\n");
    return kExitError;
  }
  if (!flags.out_dir && cfg.out_dir) out_dir = *cfg.out_dir;
  std::filesystem::create_directories(out_dir);

  std::vector<Outcome> results(cfg.checks.size());
  for (std::size_t i = 0; i < cfg.checks.size(); ++i) {
    results[i].id = cfg.checks[i].id;
    results[i].type = check_type_name(cfg.checks[i].type);
  }

  std::optional<PotentialMeasure> mu;
  try {
    mu.emplace(normalize(cfg.measure));
  } catch (const Error& e) {
    log << "error: measure: " << e.what() << '\n';
    for (Outcome& o : results) {
      o.status = "error";
      o.error_code = error_code_name(e.code());
      o.error = std::string("measure: ") + e.what();
    }
  }

  if (mu) {
    const Context ctx{*mu, flags.seed, flags.strict};
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next++; i < cfg.checks.size(); i = next++) {
        Outcome& o = results[i];
        const auto t0 = std::chrono::steady_clock::now();
        try {
          execute(cfg.checks[i], ctx, o);
        } catch (const Error& e) {
          o.status = "error";
          o.error_code = error_code_name(e.code());
          o.error = e.what();
        } catch (const std::exception& e) {
          o.status = "error";
          o.error_code = "Internal";
          o.error = e.what();
        }
        o.wallclock_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      }
    };
    int jobs = flags.jobs > 0 ? flags.jobs : static_cast<int>(std::thread::hardware_concurrency());
    jobs = std::clamp<int>(jobs, 1, static_cast<int>(cfg.checks.size()));
    std::vector<std::thread> pool;
    for (int k = 1; k < jobs; ++k) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();
  }

  ordered_json report = base_report(hash, flags.seed);
  report["checks"] = ordered_json::array();
  int code = kExitPass;
  for (const Outcome& o : results) {
    ordered_json j;
    j["id"] = o.id;
    j["type"] = o.type;
    j["status"] = o.status;
    j["C_est"] = number_or_null(o.C_est);
    j["max_ratio"] = number_or_null(o.max_ratio);
    j["argmax"] = o.argmax;
    j["n_members"] = o.n_members;
    j["n_skipped"] = o.n_skipped;
    j["wallclock_ms"] = std::round(o.wallclock_ms * 1000.0) / 1000.0;
    if (o.status == "error") {
      j["error_code"] = o.error_code;
      j["error"] = o.error;
      log << "error: " << o.id << ": " << o.error << '\n';
      code = kExitError;
    } else if (o.status == "violation" && code == kExitPass) {
      code = kExitViolation;
    }
    report["checks"].push_back(j);
    if (cfg.write_csv && !o.csv.empty()) write_file(out_dir / (o.id + ".csv"), o.csv);
  }
  write_file(out_dir / "report.json", report.dump(2) + "\n");
  return code;
}

}  // namespace transineq::app
