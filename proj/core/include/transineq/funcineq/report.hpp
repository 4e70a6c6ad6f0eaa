#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace transineq {

inline constexpr double kTolBand = 1e-6;
inline constexpr double kDegenerate = 1e-14;

struct InequalityRecord {
  std::string member_id;
  double param = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;   // lhs / rhs
  double margin = 0.0;  // rhs - lhs
  bool skipped = false;
  bool violation = false;
};

struct InequalitySummary {
  double max_ratio = 0.0;
  std::string argmax;
  std::size_t violation_count = 0;
  std::size_t n_members = 0;
  std::size_t n_skipped = 0;
  /// Fitted constant: the largest ratio.
  double C_est = 0.0;
};

/// Per-member lhs <= C rhs records. Violations are counted only when a
/// constant C is set: (C rhs - lhs) / max(1, C rhs) < -kTolBand.
class InequalityReport {
 public:
  explicit InequalityReport(std::string tag, std::optional<double> C = std::nullopt)
      : tag_(std::move(tag)), C_(C) {}

  const std::string& tag() const noexcept { return tag_; }
  std::optional<double> C() const noexcept { return C_; }
  const std::vector<InequalityRecord>& records() const noexcept { return records_; }

  /// Records one member; both sides below kDegenerate (or `force_skip`)
  /// marks it skipped.
  const InequalityRecord& add(std::string id, double param, double lhs, double rhs,
                              bool force_skip = false);
  void append(const InequalityReport& other);

  InequalitySummary summary() const;
  /// member_id,param,lhs,rhs,ratio,margin
  void write_csv(std::ostream& os) const;

 private:
  std::string tag_;
  std::optional<double> C_;
  std::vector<InequalityRecord> records_;
};

}  // namespace transineq
