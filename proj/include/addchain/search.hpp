#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "addchain/chain.hpp"

namespace addchain {

struct SearchConfig {
  /// Start iterative deepening at the ceiling of the Schönhage lower bound
  /// instead of floor(log2 n).
  bool use_schonhage_pruning = true;
  /// Cut nodes that cannot reach n under Fibonacci-rate growth of the
  /// non-doubling steps they would still need.
  bool use_gamma_pruning = true;
  std::optional<std::uint64_t> node_budget;
};

/// Number of times a named bound cut the search (or, for "schonhage_start",
/// how many depths it skipped).
struct BoundHit {
  std::string name;
  std::uint64_t count = 0;

  friend bool operator==(const BoundHit&, const BoundHit&) = default;
};

struct SearchResult {
  Value n = 1;
  int ell = 0;
  Chain witness;
  std::uint64_t nodes_expanded = 0;
  std::vector<BoundHit> prunings_applied;
  /// False only when the node budget ran out; `ell` is then an upper bound.
  bool exact = true;
};

/// Thrown when SearchConfig::node_budget is hit before minimality is
/// certified. Carries the best known (inexact) result.
class BudgetExhausted : public Error {
 public:
  explicit BudgetExhausted(SearchResult partial);
  const SearchResult& partial() const noexcept { return partial_; }

 private:
  SearchResult partial_;
};

/// Exact length of a shortest addition chain to n, with a witness.
/// Deterministic; configuration flags change speed only.
SearchResult ell(Value n, const SearchConfig& config = {});

/// Convenience wrapper returning ell(n).witness.
Chain shortest_chain(Value n, const SearchConfig& config = {});

/// Depth-limited search: a chain to n of length at most `max_length`, if one
/// exists.
std::optional<Chain> find_chain_within(Value n, int max_length, const SearchConfig& config = {});

inline constexpr Value kOracleCap = Value{1} << 20;

/// Independent brute force: plain iterative deepening whose only cut is
/// a * 2^d < n. Throws CapExceeded above kOracleCap.
int ell_oracle(Value n);

/// Oracle-side depth-limited decision: does a chain of length <= max_length
/// reach n?
bool oracle_reaches_within(Value n, int max_length);

/// The left-to-right binary method chain, of length floor(log2 n) + nu(n) - 1.
Chain binary_method_chain(Value n);

}  // namespace addchain
