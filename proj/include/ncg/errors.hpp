#pragma once

#include <stdexcept>
#include <string>

#include "ncg/report.hpp"

namespace ncg {

/// Raised when an operation's documented precondition does not hold.
/// Carries the report that established the failure, when there is one.
class PreconditionError : public std::logic_error {
 public:
  explicit PreconditionError(const std::string& what, VerificationReport report = {})
      : std::logic_error(what), report_(std::move(report)) {}

  const VerificationReport& report() const { return report_; }

 private:
  VerificationReport report_;
};

class DegenerateInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// File could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ncg
