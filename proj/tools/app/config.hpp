#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "transineq/funcineq/checks.hpp"
#include "transineq/funcineq/deviation.hpp"
#include "transineq/funcineq/family.hpp"
#include "transineq/measure/potential.hpp"

namespace transineq::app {

enum class CheckType { kSp, kWlsi, kTalagrand, kHwi, kDeviation, kBetaEstimate, kBetaFromMoments, kEnvelope };

const char* check_type_name(CheckType t);

struct BetaConfig {
  enum class Form { kExpPower, kMoments, kEstimate };
  Form form = Form::kExpPower;
  double c = 1.0;
  double delta = 1.5;
  // moments
  double K = 0.0;
  double c0 = 1.0;
  std::vector<double> r_grid;
  /// Replace the moments table by exp_power(fitted c, fit_delta).
  std::optional<double> fit_delta;
  double fit_lo = 1e-3;
  double fit_hi = 1e-1;
  // estimate
  int n = 256;
  int restarts = 32;
};

struct WeightConfig {
  /// none, thm411, thm412, thm11, cor413
  std::string source = "none";
  double c = 1.0;
  double theta = 2.0;
  std::optional<BetaConfig> beta;
};

struct CheckConfig {
  std::string id;
  CheckType type = CheckType::kWlsi;
  std::string path;  // checks[i]

  WeightConfig weight;
  std::optional<BetaConfig> beta;
  std::vector<FamilyTag> families;
  FamilyOptions family_options;
  std::vector<double> r_grid;

  std::string distance = "euclidean";
  double distance_delta = 1.5;
  double p = 2.0;
  double rhs_scale = 1.0;
  std::optional<double> C_target;
  HwiNormalization normalization = HwiNormalization::kLiteral;

  double rate_C = 1.0;
  HalfLine event;

  double theta = 2.0;
  double a = 0.0;
  double b = 1.0;
  int n = 401;
  double c_max = 10.0;
};

struct RunConfig {
  PotentialSpec measure;
  int grid_n = 256;
  double r_max = 10.0;
  std::vector<CheckConfig> checks;
  std::optional<std::string> out_dir;
  bool write_csv = true;
};

/// Parses and validates the whole document before anything is computed.
/// Throws ConfigError with the dotted path of the offending field.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig parse_config_text(const std::string& text);

}  // namespace transineq::app
