#pragma once

#include <stdexcept>
#include <string>

namespace expsum {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or invalid user input (bad prime, reducible modulus, syntax).
class InputError : public Error {
 public:
  using Error::Error;
};

/// The input violates a hypothesis the computation depends on; the
/// computation is refused rather than attempted.
class HypothesisFailure : public Error {
 public:
  using Error::Error;
};

/// An internal cross-check or a theorem-level claim did not hold.
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

/// The requested enumeration exceeds the configured point budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::string required)
      : Error(what), required_(std::move(required)) {}

  /// Number of points the rejected request would have enumerated (decimal).
  const std::string& required() const noexcept { return required_; }

 private:
  std::string required_;
};

}  // namespace expsum
