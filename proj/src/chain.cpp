#include "addchain/chain.hpp"

#include <algorithm>
#include <bit>

namespace addchain {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotStartingAtOne: return "NotStartingAtOne";
    case ErrorKind::NotIncreasing: return "NotIncreasing";
    case ErrorKind::BadOperandIndex: return "BadOperandIndex";
    case ErrorKind::SumMismatch: return "SumMismatch";
    case ErrorKind::NoDecomposition: return "NoDecomposition";
    case ErrorKind::OverflowRisk: return "OverflowRisk";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::BudgetExhausted: return "BudgetExhausted";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::MTooSmall: return "MTooSmall";
    case ErrorKind::PrecisionEscalation: return "PrecisionEscalation";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::CacheMismatch: return "CacheMismatch";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

std::vector<Value> Chain::values() const {
  std::vector<Value> out;
  out.reserve(steps_.size());
  for (const auto& step : steps_) out.push_back(step.value);
  return out;
}

std::vector<OperandPair> Chain::operands() const {
  std::vector<OperandPair> out;
  out.reserve(length());
  for (std::size_t j = 1; j < steps_.size(); ++j) out.push_back(*steps_[j].operands);
  return out;
}

bool Chain::is_star() const noexcept {
  for (std::size_t j = 1; j < steps_.size(); ++j) {
    if (steps_[j].operands->s != j - 1) return false;
  }
  return true;
}

namespace {

void check_value_prefix(std::span<const Value> values) {
  if (values.empty()) throw Error(ErrorKind::NotStartingAtOne, "empty chain", 0);
  if (values[0] != 1) throw Error(ErrorKind::NotStartingAtOne, "chain must start at 1", 0);
  for (std::size_t j = 1; j < values.size(); ++j) {
    if (values[j] > kMaxValue) {
      throw Error(ErrorKind::OverflowRisk,
                  "value at index " + std::to_string(j) + " exceeds 2^63", j);
    }
    if (values[j] <= values[j - 1]) {
      throw Error(ErrorKind::NotIncreasing,
                  "values not strictly increasing at index " + std::to_string(j), j);
    }
  }
}

}  // namespace

Chain validate_chain(std::span<const Value> values, std::span<const OperandPair> operands) {
  check_value_prefix(values);
  if (operands.size() != values.size() - 1) {
    const std::size_t at = std::min(operands.size(), values.size() - 1) + 1;
    throw Error(ErrorKind::BadOperandIndex,
                "expected " + std::to_string(values.size() - 1) + " operand pairs, got " +
                    std::to_string(operands.size()),
                at);
  }
  std::vector<ChainStep> steps;
  steps.reserve(values.size());
  steps.push_back({values[0], std::nullopt});
  for (std::size_t j = 1; j < values.size(); ++j) {
    const OperandPair& op = operands[j - 1];
    if (op.i > op.s || op.s >= j) {
      throw Error(ErrorKind::BadOperandIndex,
                  "operands (" + std::to_string(op.i) + "," + std::to_string(op.s) +
                      ") invalid at index " + std::to_string(j),
                  j);
    }
    if (values[op.i] + values[op.s] != values[j]) {
      throw Error(ErrorKind::SumMismatch,
                  std::to_string(values[op.i]) + "+" + std::to_string(values[op.s]) +
                      " != " + std::to_string(values[j]) + " at index " + std::to_string(j),
                  j);
    }
    steps.push_back({values[j], op});
  }
  return Chain(std::move(steps));
}

Chain infer_operands(std::span<const Value> values) {
  check_value_prefix(values);
  std::vector<OperandPair> ops;
  ops.reserve(values.size() - 1);
  for (std::size_t j = 1; j < values.size(); ++j) {
    std::optional<OperandPair> found;
    // values are increasing, so the partner of a_i lives in [i, j).
    for (std::size_t i = 0; i < j && !found; ++i) {
      if (2 * values[i] > values[j]) break;
      const Value want = values[j] - values[i];
      auto first = values.begin() + static_cast<std::ptrdiff_t>(i);
      auto last = values.begin() + static_cast<std::ptrdiff_t>(j);
      auto it = std::lower_bound(first, last, want);
      if (it != last && *it == want) {
        found = OperandPair{i, static_cast<std::size_t>(it - values.begin())};
      }
    }
    if (!found) {
      throw Error(ErrorKind::NoDecomposition,
                  std::to_string(values[j]) + " is not a sum of two earlier values (index " +
                      std::to_string(j) + ")",
                  j);
    }
    ops.push_back(*found);
  }
  return validate_chain(values, ops);
}

int nu(Value n) {
  if (n == 0) throw Error(ErrorKind::DomainError, "nu requires n >= 1");
  return std::popcount(n);
}

int floor_log2(Value n) {
  if (n == 0) throw Error(ErrorKind::DomainError, "floor_log2 requires n >= 1");
  return std::bit_width(n) - 1;
}

}  // namespace addchain
