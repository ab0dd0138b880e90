#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qdt {

enum class ErrorKind {
  invalid_argument,
  frame_mismatch,
  invalid_capacity,
  parse,
  budget_exceeded,
  precondition,
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised when an exhaustive check would exceed the configured quantifier
// budget. Checks are refused, never sampled.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::uint64_t space, std::uint64_t limit, const std::string& what)
      : Error(ErrorKind::budget_exceeded, what), space_(space), limit_(limit) {}

  std::uint64_t space() const noexcept { return space_; }
  std::uint64_t limit() const noexcept { return limit_; }

 private:
  std::uint64_t space_;
  std::uint64_t limit_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace qdt
