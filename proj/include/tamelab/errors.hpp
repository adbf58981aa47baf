#pragma once

#include <stdexcept>
#include <string>

namespace tamelab {

/// Caller violated an operation's precondition (mismatched jets, bad order,
/// unsupported primitive, malformed configuration).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A point left the open domain U of a map. Carries the computed margin.
class DomainError : public std::runtime_error {
 public:
  DomainError(const std::string& what, double margin)
      : std::runtime_error(what), margin_(margin) {}
  double margin() const noexcept { return margin_; }

 private:
  double margin_;
};

/// A search (root, argmax) produced no usable answer.
class NotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested computation needs m beyond the supported double-precision range.
class PrecisionBudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tamelab
