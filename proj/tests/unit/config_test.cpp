#include <string>

#include <gtest/gtest.h>

#include "app/config.hpp"
#include "app/runner.hpp"
#include "transineq/errors.hpp"

using transineq::ConfigError;
using transineq::app::parse_config_text;

namespace {

std::string error_path(const std::string& text) {
  try {
    parse_config_text(text);
  } catch (const ConfigError& e) {
    return e.path();
  }
  return "<no error>";
}

}  // namespace

TEST(Config, ParsesChecksAndDefaults) {
  const auto run = parse_config_text(R"({
    "measure": {"potential": "-r^2/2"},
    "grid": {"n": 64},
    "checks": [
      {"type": "wlsi", "family": ["exp_tilts", "hermite_like"], "C_target": 2.001},
      {"id": "dev", "type": "deviation", "event": {"side": "upper", "a": 1},
       "r_grid": [1, 2, 3]},
      {"type": "sp", "beta": {"form": "exp_power", "c": 2, "delta": 1},
       "r_grid": {"lo": 0.001, "hi": 1, "n": 4}, "family": "hermite_like", "refine": 2}
    ]})");
  ASSERT_EQ(run.checks.size(), 3u);
  EXPECT_EQ(run.grid_n, 64);
  EXPECT_EQ(run.checks[0].id, "wlsi_0");
  EXPECT_EQ(run.checks[0].families.size(), 2u);
  EXPECT_EQ(*run.checks[0].C_target, 2.001);
  EXPECT_EQ(run.checks[1].r_grid.size(), 3u);
  EXPECT_EQ(run.checks[1].event.side, transineq::HalfLine::Side::kUpper);
  const auto& rg = run.checks[2].r_grid;
  ASSERT_EQ(rg.size(), 4u);
  EXPECT_NEAR(rg[1], 0.01, 1e-15);
  EXPECT_EQ(run.checks[2].family_options.refine, 2);
  EXPECT_TRUE(run.measure.power);
}

TEST(Config, ErrorsCarryDottedPaths) {
  EXPECT_EQ(error_path(R"({"measure": {"potential": "-r^"}, "checks": [{"type": "wlsi", "family": "exp_tilts"}]})"),
            "measure.potential");
  EXPECT_EQ(error_path(R"({"measure": {"potential": "-r^2"}, "checks": [{"type": "wlsi", "family": "exp_tilts",
                           "colour": 1}]})"),
            "checks[0].colour");
  EXPECT_EQ(error_path(R"({"measure": {"potential": "-r^2"}, "checks": [{"type": "nope"}]})"), "checks[0].type");
  EXPECT_EQ(error_path(R"({"measure": {"potential": "-r^2"}, "checks": [
              {"id": "a", "type": "wlsi", "family": "exp_tilts"},
              {"id": "a", "type": "wlsi", "family": "exp_tilts"}]})"),
            "checks[1].id");
  EXPECT_EQ(error_path(R"({"measure": {"potential": "-r^2"}, "checks": [{"type": "sp", "family": "exp_tilts",
              "beta": {"form": "table"}, "r_grid": [1]}]})"),
            "checks[0].beta.form");
  EXPECT_EQ(error_path(R"({"measure": {"potential": "-r^2"}, "checks": []})"), "checks");
  EXPECT_EQ(error_path(R"({"measure": {"potential": "-r^2"}, "grid": {"rel_tol": 1e-9},
              "checks": [{"type": "wlsi", "family": "exp_tilts"}]})"),
            "grid.rel_tol");
  EXPECT_EQ(error_path(R"({"measure": {"kind": "radial", "dim": 2, "potential": "-r^2"},
              "checks": [{"type": "deviation", "event": {"a": 0}, "r_grid": [1]}]})"),
            "checks[0].type");
  EXPECT_EQ(error_path("{not json"), "");
}

TEST(Config, ContentHashIsFnv1a) {
  EXPECT_EQ(transineq::app::content_hash(""), "cbf29ce484222325");
  EXPECT_EQ(transineq::app::content_hash("a"), "af63dc4c8601ec8c");
}
