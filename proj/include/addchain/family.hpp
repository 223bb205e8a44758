#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "addchain/chain.hpp"

namespace addchain {

// Explicit chains to integers whose binary expansion is k odd u-bit windows
// separated by zero runs:  N = U_1 0^{s_1} U_2 0^{s_2} ... 0^{s_{k-1}} U_k.
// The chain first builds 1, 2, ..., 2^u - 1, then from U_1 alternates
// (s_j + u) doublings with one addition of U_{j+1}.

struct FamilyParams {
  int digits = 1;  // binary digit count of every N, sum(s) + k u
  int u = 1;       // window width
  int k = 1;       // window count
  double budget_r = 0.0;
};

/// Checks k u <= digits and 2^u + k - u <= budget_r (InvariantViolation).
void validate_params(const FamilyParams& params);

struct FamilyInstance {
  FamilyParams params;
  std::vector<int> s;      // k - 1 zero-run lengths
  std::vector<Value> U;    // k odd windows in [2^{u-1}, 2^u)
  Value N = 1;
  Chain chain;
  /// Index of N in the construction that re-lists U_1 before doubling; one
  /// more than chain.length().
  std::int64_t listed_index = 0;
};

/// Maximum chain length the construction allows: 2^u + digits - u + k - 2.
std::int64_t family_length_bound(const FamilyParams& params);

/// Builds one chain and verifies N against the bit concatenation. Throws
/// InvariantViolation (naming the failed condition) or OverflowRisk when N
/// would not fit in 63 bits.
FamilyInstance generate_chain(const FamilyParams& params, const std::vector<int>& s,
                              const std::vector<Value>& U);

struct FamilySize {
  /// (#windows)^k times the number of nonnegative (s_1..s_{k-1}) summing to
  /// digits - k u, i.e. C(digits - ku + k - 2, k - 2).
  std::uint64_t count = 0;
  /// The same product with C(digits - ku + k - 2, k - 1), kept for comparison.
  std::uint64_t binomial_k_minus_1 = 0;
  std::uint64_t window_choices = 0;  // odd integers in [2^{u-1}, 2^u)
  std::uint64_t gap_choices = 0;
};

FamilySize family_size(const FamilyParams& params);

inline constexpr std::uint64_t kFamilyEnumerationCap = 10'000'000;

/// Calls `visit` once per (s, U) in lexicographic order (s first, then U);
/// stops early when `visit` returns false. Throws CapExceeded when the family
/// is larger than kFamilyEnumerationCap.
void enumerate_family(const FamilyParams& params,
                      const std::function<bool(const FamilyInstance&)>& visit);

std::vector<FamilyInstance> collect_family(const FamilyParams& params);

struct ParamChoice {
  int m = 0;
  double c = 0.0;
  double r = 0.0;  // c m / log m
  double y = 0.0;  // c m / (log m)^2
  FamilyParams params;
  /// Conditions that fail at this m: "ku <= digits", "2^u + k - u <= r",
  /// "r - k >= 4", "u >= 1", "k >= 1".
  std::vector<std::string> failing;
};

/// The parameter choice of the asymptotic construction: r = cm/log m,
/// y = cm/(log m)^2, k = round(r - y), u = round(log2(r - k)), digits = m,
/// rounding half to even. Requires 0 < c < log 2.
ParamChoice choose_params(int m, double c);

}  // namespace addchain
