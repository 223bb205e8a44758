#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace addchain {

enum class ErrorKind {
  NotStartingAtOne,
  NotIncreasing,
  BadOperandIndex,
  SumMismatch,
  NoDecomposition,
  OverflowRisk,
  CapExceeded,
  BudgetExhausted,
  DomainError,
  MTooSmall,
  PrecisionEscalation,
  InvariantViolation,
  CacheMismatch,
  ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Base error for every failure raised by the library. `index()` names the
/// first offending chain position when the failure is positional.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what,
        std::optional<std::size_t> index = std::nullopt)
      : std::runtime_error(what), kind_(kind), index_(index) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> index_;
};

// True for errors the CLI reports as cap/budget exhaustion (exit code 2).
inline bool is_resource_error(ErrorKind kind) noexcept {
  return kind == ErrorKind::CapExceeded || kind == ErrorKind::BudgetExhausted;
}

}  // namespace addchain
