#ifndef ELLIK_REPORT_HPP
#define ELLIK_REPORT_HPP

#include <json.hpp>

#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace ellik {

/// Outcome of one verification claim: the range it covered, the smallest
/// slack observed, and where it first failed, if anywhere.
struct VerificationReport {
  std::string claim_id;
  std::string range;
  double min_margin = std::numeric_limits<double>::infinity();
  bool passed = false;
  std::optional<std::string> first_failure;
  unsigned digits_used = 0;

  /// Fixed schema, fixed field order.
  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["claim_id"] = claim_id;
    j["range"] = range;
    j["min_margin"] = min_margin;
    j["passed"] = passed;
    if (first_failure) j["first_failure"] = *first_failure;
    else j["first_failure"] = nullptr;
    j["digits_used"] = digits_used;
    return j;
  }
};

/// Margin accumulator enforcing the reporting invariant: a report passes
/// iff every margin stayed positive and nothing was flagged.
class MarginTracker {
public:
  void observe(double margin, const std::string& location) {
    if (margin < min_margin_) {
      min_margin_ = margin;
      argmin_ = location;
    }
    if (margin <= 0 && !failure_) failure_ = location;
  }

  void flag(const std::string& location) {
    if (!failure_) failure_ = location;
  }

  double min_margin() const { return min_margin_; }
  const std::string& argmin() const { return argmin_; }
  bool passed() const { return !failure_ && min_margin_ > 0; }
  const std::optional<std::string>& failure() const { return failure_; }

  VerificationReport report(std::string claim_id, std::string range, unsigned digits) const {
    VerificationReport r;
    r.claim_id = std::move(claim_id);
    r.range = std::move(range);
    r.min_margin = min_margin_;
    r.passed = passed();
    r.first_failure = failure_;
    r.digits_used = digits;
    return r;
  }

private:
  double min_margin_ = std::numeric_limits<double>::infinity();
  std::string argmin_;
  std::optional<std::string> failure_;
};

} // namespace ellik

#endif
