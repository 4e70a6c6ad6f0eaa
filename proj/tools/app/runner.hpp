#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace transineq::app {

struct RunFlags {
  std::string config_path;
  std::uint64_t seed = 42;
  /// Overrides output.dir of the config; ./out when neither is given.
  std::optional<std::string> out_dir;
  int jobs = 0;  // 0: hardware concurrency
  bool strict = false;
};

/// Exit codes of run().
inline constexpr int kExitPass = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitViolation = 2;

/// Validates the config, runs every check and writes report.json plus one
/// CSV per check. Diagnostics go to `log`.
int run(const RunFlags& flags, std::ostream& log);

/// 64-bit FNV-1a of the config bytes as 16 hex digits.
std::string content_hash(const std::string& bytes);

}  // namespace transineq::app
