#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ncg {

struct CheckResult {
  std::string check;
  std::string ref;  // the relation being checked, in plain notation
  double violation = 0.0;
  int radius = 0;
  bool pass = false;
};

/// Ordered list of named checks. An entry passes iff violation <= tolerance.
class VerificationReport {
 public:
  void add(std::string check, std::string ref, double violation, int radius, double tolerance);
  /// Adds an entry whose pass/fail was decided by the caller (e.g. expected deviations).
  void add_decided(std::string check, std::string ref, double violation, int radius, bool pass);
  void append(const VerificationReport& other, std::string_view prefix = {});

  const std::vector<CheckResult>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  bool all_passed() const;
  /// First entry whose name equals `check`; throws std::out_of_range if absent.
  const CheckResult& at(std::string_view check) const;
  bool contains(std::string_view check) const;
  /// True iff every entry whose name starts with `prefix` passes (and at least one exists).
  bool passed(std::string_view prefix) const;
  double max_violation(std::string_view prefix = {}) const;
  std::vector<std::string> failures() const;

 private:
  std::vector<CheckResult> entries_;
};

}  // namespace ncg
