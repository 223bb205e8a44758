#include "addchain/search.hpp"

#include <algorithm>
#include <array>
#include <limits>

#include "addchain/bounds.hpp"

namespace addchain {

BudgetExhausted::BudgetExhausted(SearchResult partial)
    : Error(ErrorKind::BudgetExhausted,
            "node budget exhausted before minimality was certified for n=" +
                std::to_string(partial.n) + "; best known length " +
                std::to_string(partial.ell)),
      partial_(std::move(partial)) {}

namespace {

__extension__ typedef unsigned __int128 Wide;

constexpr int kMaxDepth = 130;
constexpr Wide kSaturated = ~Wide{0};

// v * 2^d, saturating.
Wide shl_sat(Wide v, int d) {
  if (v == 0) return 0;
  if (d >= 64 || v >= (Wide{1} << 64)) return kSaturated;
  return v << d;
}

// x * 2^d >= n, without overflow.
bool doubling_reaches(Value x, int d, Value n) {
  return shl_sat(x, d) >= n;
}

struct BudgetHit {};

class Engine {
 public:
  Engine(Value n, const SearchConfig& config) : n_(n), config_(config) {}

  // Chain of length <= depth ending at n, written to a_[0..top_].
  bool run(int depth) {
    depth_ = depth;
    a_[0] = 1;
    top_ = 0;
    return dfs(0);
  }

  std::vector<Value> witness_values() const {
    return std::vector<Value>(a_.begin(), a_.begin() + top_ + 1);
  }

  std::uint64_t nodes() const { return nodes_; }

  std::vector<BoundHit> hits(int schonhage_skipped) const {
    std::vector<BoundHit> out;
    if (schonhage_skipped > 0) {
      out.push_back({"schonhage_start", static_cast<std::uint64_t>(schonhage_skipped)});
    }
    if (doubling_hits_) out.push_back({"doubling", doubling_hits_});
    if (single_growth_hits_) out.push_back({"gamma_single", single_growth_hits_});
    if (double_growth_hits_) out.push_back({"gamma_double", double_growth_hits_});
    return out;
  }

 private:
  bool in_chain(int j, Value v) const {
    return std::binary_search(a_.begin(), a_.begin() + j + 1, v);
  }

  bool is_pair_sum(int j, Value v) const {
    int lo = 0;
    int hi = j;
    while (lo <= hi) {
      const Value s = a_[lo] + a_[hi];
      if (s == v) return true;
      if (s < v) {
        ++lo;
      } else {
        --hi;
      }
    }
    return false;
  }

  bool finish(int j, Value v) {
    a_[j + 1] = v;
    top_ = j + 1;
    return true;
  }

  // Two steps left: find v with n - v in the chain or n = 2v. Among all such
  // v, take the one the canonical candidate order would try first.
  bool finish_in_two(int j) {
    const Value x = a_[j];
    if (!doubling_reaches(x, 2, n_)) {
      ++doubling_hits_;
      return false;
    }
    bool have = false;
    bool best_star = false;
    Value best = 0;
    auto consider = [&](Value v) {
      if (v <= x || v > 2 * x || !is_pair_sum(j, v)) return;
      const bool star = in_chain(j, v - x);
      if (!have || (star && !best_star) || (star == best_star && v > best)) {
        have = true;
        best_star = star;
        best = v;
      }
    };
    if (n_ % 2 == 0) consider(n_ / 2);
    for (int w = j; w >= 0; --w) {
      if (a_[w] >= n_) continue;
      consider(n_ - a_[w]);
    }
    if (!have) return false;
    a_[j + 1] = best;
    a_[j + 2] = n_;
    top_ = j + 2;
    return true;
  }

  // Upper bound on where d more steps can go from (x, y) = (a_j, a_{j-1})
  // when they contain at least one non-doubling step. A non-doubling step
  // satisfies a_t <= a_{t-1} + a_{t-2}, so the last one either comes first
  // ((x + y) 2^{d-1}) or follows a doubling (3x 2^{d-2}).
  static Wide single_growth_bound(Value x, Value y, int d) {
    return std::max(shl_sat(Wide{x} + y, d - 1), shl_sat(Wide{3} * x, d - 2));
  }

  // Greedy upper envelope for a fixed doubling/non-doubling pattern.
  static Wide pattern_bound(Value x, Value y, int d, int p1, int p2) {
    Wide hi = x;
    Wide lo = y;
    for (int t = 0; t < d; ++t) {
      const Wide next = (t == p1 || t == p2) ? hi + lo : 2 * hi;
      lo = hi;
      hi = next;
      if (hi >= (Wide{1} << 100)) return kSaturated;
    }
    return hi;
  }

  // n reachable from the current chain with exactly one non-doubling step
  // among the remaining d: n = (x 2^{p-1} + e) 2^{d-p} with e an element
  // already present at that point.
  bool single_nondoubling_reaches(int j, int d) const {
    const Value x = a_[j];
    for (int p = 1; p <= d; ++p) {
      const int tail = d - p;
      if (tail >= 64) continue;
      if (n_ & ((Value{1} << tail) - 1)) continue;
      const Value head = n_ >> tail;
      const Wide cur = shl_sat(x, p - 1);
      if (Wide{head} <= cur) continue;
      const Wide e = Wide{head} - cur;
      if (e >= cur) continue;
      const Value ev = static_cast<Value>(e);
      if (in_chain(j, ev)) return true;
      for (int i = 1; i < p - 1; ++i) {
        if (shl_sat(x, i) == e) return true;
      }
    }
    return false;
  }

  bool gamma_prunes(int j, int d) {
    const Value x = a_[j];
    const Value y = j > 0 ? a_[j - 1] : 0;
    if (shl_sat(x, d) == n_) return false;
    if (Wide{n_} > single_growth_bound(x, y, d)) {
      ++single_growth_hits_;
      return true;
    }
    if (d < 3 || d > 40 || single_nondoubling_reaches(j, d)) return false;
    Wide best = 0;
    for (int p1 = 0; p1 < d; ++p1) {
      for (int p2 = p1 + 1; p2 < d; ++p2) best = std::max(best, pattern_bound(x, y, d, p1, p2));
    }
    if (Wide{n_} > best) {
      ++double_growth_hits_;
      return true;
    }
    return false;
  }

  // Candidates for step j+1: star sums x + a_i first, then the remaining
  // pair sums, each in decreasing order, values deduplicated.
  void candidates(int j, int d, std::vector<Value>& out) {
    out.clear();
    const Value x = a_[j];
    for (int i = j; i >= 0; --i) {
      const Value v = x + a_[i];
      if (v > n_) continue;
      if (!doubling_reaches(v, d - 1, n_)) {
        ++doubling_hits_;
        break;
      }
      out.push_back(v);
    }
    const std::size_t star_count = out.size();
    for (int p = j - 1; p >= 0; --p) {
      if (!doubling_reaches(2 * a_[p], d - 1, n_)) break;
      for (int q = p; q >= 0; --q) {
        const Value v = a_[p] + a_[q];
        if (v <= x) break;
        if (v > n_) continue;
        if (!doubling_reaches(v, d - 1, n_)) break;
        out.push_back(v);
      }
    }
    auto rest = out.begin() + static_cast<std::ptrdiff_t>(star_count);
    std::sort(rest, out.end(), std::greater<>());
    out.erase(std::unique(rest, out.end()), out.end());
    // star values are descending; drop non-star duplicates of them
    auto star_end = out.begin() + static_cast<std::ptrdiff_t>(star_count);
    out.erase(std::remove_if(rest, out.end(),
                             [&](Value v) {
                               return std::binary_search(out.begin(), star_end, v,
                                                         std::greater<>());
                             }),
              out.end());
  }

  bool dfs(int j) {
    ++nodes_;
    if (config_.node_budget && nodes_ > *config_.node_budget) throw BudgetHit{};
    const Value x = a_[j];
    if (x == n_) {
      top_ = j;
      return true;
    }
    const int d = depth_ - j;
    if (d <= 0) return false;
    if (n_ <= 2 * x && is_pair_sum(j, n_)) return finish(j, n_);
    if (d == 1) return false;
    if (!doubling_reaches(x, d, n_)) {
      ++doubling_hits_;
      return false;
    }
    if (d == 2) return finish_in_two(j);
    if (config_.use_gamma_pruning && gamma_prunes(j, d)) return false;

    auto& buf = buffers_[static_cast<std::size_t>(j)];
    candidates(j, d, buf);
    for (const Value v : buf) {
      a_[j + 1] = v;
      if (dfs(j + 1)) return true;
    }
    return false;
  }

  Value n_;
  SearchConfig config_;
  int depth_ = 0;
  int top_ = 0;
  std::array<Value, kMaxDepth + 2> a_{};
  std::array<std::vector<Value>, kMaxDepth + 2> buffers_{};
  std::uint64_t nodes_ = 0;
  std::uint64_t doubling_hits_ = 0;
  std::uint64_t single_growth_hits_ = 0;
  std::uint64_t double_growth_hits_ = 0;
};

void require_positive(Value n) {
  if (n == 0) throw Error(ErrorKind::DomainError, "n must be >= 1");
  if (n > kMaxValue) throw Error(ErrorKind::OverflowRisk, "n exceeds 2^63");
}

}  // namespace

Chain binary_method_chain(Value n) {
  require_positive(n);
  std::vector<Value> values{1};
  std::vector<OperandPair> ops;
  const int top = floor_log2(n);
  Value cur = 1;
  for (int bit = top - 1; bit >= 0; --bit) {
    const std::size_t idx = values.size() - 1;
    cur *= 2;
    values.push_back(cur);
    ops.push_back({idx, idx});
    if ((n >> bit) & 1) {
      cur += 1;
      ops.push_back({0, values.size() - 1});
      values.push_back(cur);
    }
  }
  return validate_chain(values, ops);
}

SearchResult ell(Value n, const SearchConfig& config) {
  require_positive(n);
  if (config.node_budget && *config.node_budget == 0) {
    throw Error(ErrorKind::DomainError, "node_budget must be positive");
  }
  const int floor_depth = floor_log2(n);
  const int start = config.use_schonhage_pruning ? schonhage_depth(n) : floor_depth;
  const int ceiling = binary_method_bound(n);
  Engine engine(n, config);
  try {
    for (int depth = start; depth <= ceiling; ++depth) {
      if (engine.run(depth)) {
        SearchResult result;
        result.n = n;
        result.witness = infer_operands(engine.witness_values());
        result.ell = static_cast<int>(result.witness.length());
        result.nodes_expanded = engine.nodes();
        result.prunings_applied = engine.hits(start - floor_depth);
        return result;
      }
    }
  } catch (const BudgetHit&) {
    SearchResult partial;
    partial.n = n;
    partial.witness = binary_method_chain(n);
    partial.ell = static_cast<int>(partial.witness.length());
    partial.nodes_expanded = engine.nodes();
    partial.prunings_applied = engine.hits(start - floor_depth);
    partial.exact = false;
    throw BudgetExhausted(std::move(partial));
  }
  throw Error(ErrorKind::InvariantViolation,
              "search failed to reach the binary method length for n=" + std::to_string(n));
}

Chain shortest_chain(Value n, const SearchConfig& config) {
  return ell(n, config).witness;
}

std::optional<Chain> find_chain_within(Value n, int max_length, const SearchConfig& config) {
  require_positive(n);
  if (max_length < 0) return std::nullopt;
  if (max_length > kMaxDepth) max_length = kMaxDepth;
  Engine engine(n, config);
  try {
    if (engine.run(max_length)) return infer_operands(engine.witness_values());
  } catch (const BudgetHit&) {
    throw Error(ErrorKind::BudgetExhausted, "node budget exhausted in depth-limited search");
  }
  return std::nullopt;
}

namespace {

// Plain depth-first enumeration of strictly increasing chains. Its only cut
// is the doubling bound; it shares no code with Engine.
class OracleSearch {
 public:
  explicit OracleSearch(Value n) : n_(n) {}

  bool reaches_within(int depth) {
    depth_ = depth;
    chain_.assign(1, 1);
    if (scratch_.size() < static_cast<std::size_t>(depth) + 1) scratch_.resize(depth + 1);
    return extend();
  }

 private:
  bool extend() {
    const Value top = chain_.back();
    if (top == n_) return true;
    const int remaining = depth_ - static_cast<int>(chain_.size() - 1);
    if (remaining == 0) return false;
    if (remaining == 1) return is_pair_sum();
    auto& next = scratch_[chain_.size() - 1];
    next.clear();
    // Every sum above top that survives the doubling cut; the breaks only
    // skip sums that are too small.
    for (std::size_t p = chain_.size(); p-- > 0;) {
      if (2 * chain_[p] <= top) break;
      for (std::size_t q = p + 1; q-- > 0;) {
        const Value v = chain_[p] + chain_[q];
        if (v <= top) break;
        if (v > n_) continue;
        if ((Wide{v} << (remaining - 1)) < n_) break;
        next.push_back(v);
      }
    }
    std::sort(next.begin(), next.end(), std::greater<>());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    for (std::size_t c = 0; c < next.size(); ++c) {
      chain_.push_back(next[c]);
      if (extend()) return true;
      chain_.pop_back();
    }
    return false;
  }

  // The last step can only be n itself.
  bool is_pair_sum() const {
    std::size_t lo = 0;
    std::size_t hi = chain_.size() - 1;
    while (lo <= hi) {
      const Value s = chain_[lo] + chain_[hi];
      if (s == n_) return true;
      if (s < n_) {
        ++lo;
      } else {
        if (hi == 0) break;
        --hi;
      }
    }
    return false;
  }

  Value n_;
  int depth_ = 0;
  std::vector<Value> chain_;
  std::vector<std::vector<Value>> scratch_;
};

void require_oracle_range(Value n) {
  if (n == 0) throw Error(ErrorKind::DomainError, "n must be >= 1");
  if (n > kOracleCap) {
    throw Error(ErrorKind::CapExceeded, "oracle is capped at n <= 2^20, got " + std::to_string(n));
  }
}

}  // namespace

bool oracle_reaches_within(Value n, int max_length) {
  require_oracle_range(n);
  if (max_length < 0) return false;
  return OracleSearch(n).reaches_within(std::min(max_length, 64));
}

int ell_oracle(Value n) {
  require_oracle_range(n);
  OracleSearch search(n);
  for (int depth = 0;; ++depth) {
    if (search.reaches_within(depth)) return depth;
  }
}

}  // namespace addchain
