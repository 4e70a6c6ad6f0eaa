#include "transineq/funcineq/report.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace transineq {

const InequalityRecord& InequalityReport::add(std::string id, double param, double lhs, double rhs,
                                              bool force_skip) {
  InequalityRecord r;
  r.member_id = std::move(id);
  r.param = param;
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.skipped = force_skip || (std::abs(lhs) < kDegenerate && std::abs(rhs) < kDegenerate);
  if (!r.skipped) {
    r.ratio = lhs / rhs;
    if (C_) {
      const double crhs = *C_ * rhs;
      r.violation = (crhs - lhs) / std::max(1.0, crhs) < -kTolBand;
    }
  }
  records_.push_back(std::move(r));
  return records_.back();
}

void InequalityReport::append(const InequalityReport& other) {
  for (const InequalityRecord& r : other.records_) records_.push_back(r);
}

InequalitySummary InequalityReport::summary() const {
  InequalitySummary s;
  s.n_members = records_.size();
  bool first = true;
  for (const InequalityRecord& r : records_) {
    if (r.skipped) {
      ++s.n_skipped;
      continue;
    }
    if (r.violation) ++s.violation_count;
    // NaN ratios win so that they cannot hide behind a finite maximum.
    if (first || r.ratio > s.max_ratio || std::isnan(r.ratio)) {
      s.max_ratio = r.ratio;
      s.argmax = r.member_id;
      first = false;
      if (std::isnan(r.ratio)) break;
    }
  }
  s.C_est = s.max_ratio;
  return s;
}

void InequalityReport::write_csv(std::ostream& os) const {
  const auto old = os.precision(17);
  os << "member_id,param,lhs,rhs,ratio,margin\n";
  for (const InequalityRecord& r : records_) {
    os << r.member_id << ',' << r.param << ',' << r.lhs << ',' << r.rhs << ',';
    if (r.skipped) {
      os << "skipped";
    } else {
      os << r.ratio;
    }
    os << ',' << r.margin << '\n';
  }
  os.precision(old);
}

}  // namespace transineq
