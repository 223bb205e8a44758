#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <utility>
#include <vector>

#include "addchain/chain.hpp"

namespace addchain {

inline constexpr int kHCap = 12;
inline constexpr int kColdCountCap = 14;
inline constexpr int kWarmCountCap = 18;

struct HResult {
  int k = 0;
  std::uint64_t h = 0;
  std::optional<std::vector<Value>> reachable;  // sorted, when collected
};

/// Number of distinct integers reachable by some chain of length <= k,
/// by exhaustive enumeration of strictly increasing chains. k <= 12.
HResult count_H(int k, bool collect = false);

/// Shortest-chain lengths keyed by n, optionally backed by a text file of
/// `n,ell` lines in strictly increasing n. Reads may run concurrently;
/// inserts take an exclusive lock.
class EllCache {
 public:
  EllCache() = default;

  /// Loads `path` (merging into an empty cache) and verifies `spot_checks`
  /// deterministic samples against the search engine. A missing file yields an
  /// empty cache that will be written to `path` on save().
  static EllCache open(const std::filesystem::path& path, int spot_checks = 8);

  /// Merges the records of `path` into this cache. Conflicting values throw
  /// CacheMismatch.
  void merge_file(const std::filesystem::path& path);

  /// Re-derives up to `count` cached values with the search engine, sampled
  /// evenly among the cheap (small n) entries. Throws CacheMismatch.
  void spot_check(int count) const;

  std::optional<int> get(Value n) const;
  void put(Value n, int ell);
  void put_batch(const std::vector<std::pair<Value, int>>& records);

  bool covers(Value lo, Value hi) const;  // every n in [lo, hi) cached
  std::size_t size() const;
  std::vector<std::pair<Value, int>> records() const;

  const std::optional<std::filesystem::path>& source_path() const { return source_; }
  void set_source_path(std::filesystem::path path) { source_ = std::move(path); }

  /// Rewrites the backing file (or `path`) with every record, sorted by n.
  void save() const;
  void save(const std::filesystem::path& path) const;

 private:
  std::unique_ptr<std::shared_mutex> mutex_ = std::make_unique<std::shared_mutex>();
  std::map<Value, int> entries_;
  std::optional<std::filesystem::path> source_;
};

using EllHistogram = std::map<int, std::uint64_t>;

/// Histogram of shortest chain lengths over n in [2^m, 2^{m+1}). Misses are
/// filled by the search engine on `threads` workers over contiguous shards
/// and written to the cache after the parallel phase (and saved when the
/// cache has a backing file). m <= 14 cold, m <= 18 when the cache already
/// covers the interval.
EllHistogram ell_histogram(int m, EllCache* cache = nullptr, int threads = 1);

struct CountResult {
  int m = 1;
  double r = 0.0;
  std::uint64_t f = 0;
  EllHistogram histogram;
};

/// Count of n in [2^m, 2^{m+1}) with shortest chain length <= m + r.
CountResult count_F(int m, double r, EllCache* cache = nullptr, int threads = 1);

/// Prefix-sum read of a histogram: entries with ell - m <= r.
std::uint64_t count_from_histogram(const EllHistogram& histogram, int m, double r);

}  // namespace addchain
