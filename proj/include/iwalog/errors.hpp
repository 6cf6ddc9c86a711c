#pragma once

#include <stdexcept>
#include <string>

namespace iwalog {

enum class ErrorCode {
  InvalidPrime,
  MismatchedPrime,
  TeichmullerOfNonUnit,
  PrecisionLoss,
  LogOutsideDomain,
  ExpOutsideDomain,
  FrobeniusCongruenceViolated,
  NotAUnit,
  WindowExhausted,
  NotDivisible,
  DomainViolation,
  ParseError,
};

const char* error_code_name(ErrorCode code);

// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + detail),
        code_(code),
        detail_(detail) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

  // Only meaningful for PrecisionLoss: the precision that could be reached.
  int achievable_precision() const noexcept { return achievable_; }
  Error& with_achievable(int prec) {
    achievable_ = prec;
    return *this;
  }

 private:
  ErrorCode code_;
  std::string detail_;
  int achievable_ = -1;
};

// Precision and window failures map to a separate CLI exit code.
inline bool is_precision_error(ErrorCode code) {
  return code == ErrorCode::PrecisionLoss || code == ErrorCode::WindowExhausted;
}

}  // namespace iwalog
