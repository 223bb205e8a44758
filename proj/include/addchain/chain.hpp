#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "addchain/errors.hpp"

namespace addchain {

using Value = std::uint64_t;

/// Largest value any chain element may take.
inline constexpr Value kMaxValue = Value{1} << 63;

/// Operand indices (i, s) with i <= s: the step's value is a_i + a_s.
struct OperandPair {
  std::size_t i = 0;
  std::size_t s = 0;

  friend bool operator==(const OperandPair&, const OperandPair&) = default;
};

struct ChainStep {
  Value value = 1;
  std::optional<OperandPair> operands;  // absent only for a_0

  friend bool operator==(const ChainStep&, const ChainStep&) = default;
};

/// A validated addition chain 1 = a_0 < a_1 < ... < a_k. Instances are only
/// produced by validate_chain / infer_operands, so every Chain in the system
/// satisfies the chain invariants.
class Chain {
 public:
  /// The trivial chain {1}.
  Chain() : steps_{ChainStep{1, std::nullopt}} {}

  const std::vector<ChainStep>& steps() const noexcept { return steps_; }
  std::size_t length() const noexcept { return steps_.size() - 1; }
  Value target() const noexcept { return steps_.back().value; }
  Value operator[](std::size_t j) const noexcept { return steps_[j].value; }

  std::vector<Value> values() const;
  /// Operands for steps 1..k, in order.
  std::vector<OperandPair> operands() const;

  /// Step j is a doubling step, a_j = 2 a_{j-1}.
  bool is_doubling(std::size_t j) const noexcept {
    return j >= 1 && steps_[j].value == 2 * steps_[j - 1].value;
  }

  /// Every step uses the immediately preceding element as an operand.
  bool is_star() const noexcept;

  friend bool operator==(const Chain&, const Chain&) = default;

 private:
  explicit Chain(std::vector<ChainStep> steps) : steps_(std::move(steps)) {}

  std::vector<ChainStep> steps_;

  friend Chain validate_chain(std::span<const Value>, std::span<const OperandPair>);
};

/// Checks the chain invariants and returns the chain unchanged. `operands`
/// holds one pair per step 1..k. Throws Error naming the first offending index.
Chain validate_chain(std::span<const Value> values, std::span<const OperandPair> operands);

/// Builds a chain from a bare value listing, choosing the lexicographically
/// smallest (i, s) per step. Throws NoDecomposition at the first step that is
/// not a sum of two earlier values.
Chain infer_operands(std::span<const Value> values);

/// Binary popcount, the number of ones in the binary expansion of n.
int nu(Value n);

/// The unique m with 2^m <= n < 2^{m+1}.
int floor_log2(Value n);

}  // namespace addchain
