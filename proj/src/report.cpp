#include "ncg/report.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ncg {

void VerificationReport::add(std::string check, std::string ref, double violation, int radius,
                             double tolerance) {
  const bool pass = std::isfinite(violation) && violation <= tolerance;
  entries_.push_back({std::move(check), std::move(ref), violation, radius, pass});
}

void VerificationReport::add_decided(std::string check, std::string ref, double violation,
                                     int radius, bool pass) {
  entries_.push_back({std::move(check), std::move(ref), violation, radius, pass});
}

void VerificationReport::append(const VerificationReport& other, std::string_view prefix) {
  for (const auto& e : other.entries_) {
    CheckResult copy = e;
    if (!prefix.empty()) copy.check = std::string(prefix) + copy.check;
    entries_.push_back(std::move(copy));
  }
}

bool VerificationReport::all_passed() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const auto& e) { return e.pass; });
}

const CheckResult& VerificationReport::at(std::string_view check) const {
  for (const auto& e : entries_) {
    if (e.check == check) return e;
  }
  throw std::out_of_range("no check named '" + std::string(check) + "' in report");
}

bool VerificationReport::contains(std::string_view check) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const auto& e) { return e.check == check; });
}

bool VerificationReport::passed(std::string_view prefix) const {
  bool any = false;
  for (const auto& e : entries_) {
    if (e.check.compare(0, prefix.size(), prefix) != 0) continue;
    any = true;
    if (!e.pass) return false;
  }
  return any;
}

double VerificationReport::max_violation(std::string_view prefix) const {
  double worst = 0.0;
  for (const auto& e : entries_) {
    if (e.check.compare(0, prefix.size(), prefix) != 0) continue;
    worst = std::max(worst, e.violation);
  }
  return worst;
}

std::vector<std::string> VerificationReport::failures() const {
  std::vector<std::string> out;
  for (const auto& e : entries_) {
    if (!e.pass) out.push_back(e.check);
  }
  return out;
}

}  // namespace ncg
