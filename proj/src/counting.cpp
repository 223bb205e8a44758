#include "addchain/counting.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <mutex>
#include <thread>

#include "addchain/search.hpp"

namespace addchain {

namespace {

// Depth-first enumeration of strictly increasing chains up to length k,
// recording every value reached.
class ChainEnumerator {
 public:
  explicit ChainEnumerator(int k)
      : k_(k),
        limit_(Value{1} << k),
        reached_(limit_ + 1, 0),
        stamp_(limit_ + 1, 0),
        chain_(static_cast<std::size_t>(k) + 1, 0),
        scratch_(static_cast<std::size_t>(k) + 1) {}

  void run() {
    chain_[0] = 1;
    reached_[1] = 1;
    extend(0);
  }

  const std::vector<char>& reached() const { return reached_; }

 private:
  void extend(int j) {
    if (j == k_) return;
    const Value top = chain_[static_cast<std::size_t>(j)];
    const std::uint32_t id = ++node_id_;
    auto& next = scratch_[static_cast<std::size_t>(j)];
    next.clear();
    for (int p = j; p >= 0; --p) {
      const Value ap = chain_[static_cast<std::size_t>(p)];
      if (2 * ap <= top) break;
      for (int q = p; q >= 0; --q) {
        const Value v = ap + chain_[static_cast<std::size_t>(q)];
        if (v <= top) break;
        if (stamp_[v] == id) continue;
        stamp_[v] = id;
        next.push_back(v);
      }
    }
    if (j + 1 == k_) {
      for (const Value v : next) reached_[v] = 1;
      return;
    }
    for (const Value v : next) {
      reached_[v] = 1;
      chain_[static_cast<std::size_t>(j) + 1] = v;
      extend(j + 1);
    }
  }

  int k_;
  Value limit_;
  std::vector<char> reached_;
  std::vector<std::uint32_t> stamp_;
  std::vector<Value> chain_;
  std::vector<std::vector<Value>> scratch_;
  std::uint32_t node_id_ = 0;
};

void check_interval_parameter(int m) {
  if (m < 1) throw Error(ErrorKind::DomainError, "m must be >= 1");
  if (m > kWarmCountCap) {
    throw Error(ErrorKind::CapExceeded,
                "interval counts are capped at m <= " + std::to_string(kWarmCountCap));
  }
}

[[noreturn]] void cache_parse_error(const std::filesystem::path& path, std::size_t line_no,
                                    const std::string& why) {
  throw Error(ErrorKind::ParseError,
              path.string() + ":" + std::to_string(line_no) + ": " + why);
}

}  // namespace

HResult count_H(int k, bool collect) {
  if (k < 0) throw Error(ErrorKind::DomainError, "k must be >= 0");
  if (k > kHCap) {
    throw Error(ErrorKind::CapExceeded, "count_H is capped at k <= " + std::to_string(kHCap));
  }
  ChainEnumerator walker(k);
  walker.run();
  HResult out;
  out.k = k;
  std::vector<Value> values;
  const auto& reached = walker.reached();
  for (Value v = 1; v < reached.size(); ++v) {
    if (reached[v]) values.push_back(v);
  }
  out.h = values.size();
  if (collect) out.reachable = std::move(values);
  return out;
}

// --- EllCache ---------------------------------------------------------------

EllCache EllCache::open(const std::filesystem::path& path, int spot_checks) {
  EllCache cache;
  cache.source_ = path;
  if (std::filesystem::exists(path)) {
    cache.merge_file(path);
    cache.spot_check(spot_checks);
  }
  return cache;
}

void EllCache::merge_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open cache file " + path.string());
  std::vector<std::pair<Value, int>> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) cache_parse_error(path, line_no, "expected 'n,ell'");
    Value n = 0;
    int l = 0;
    const char* begin = line.data();
    auto r1 = std::from_chars(begin, begin + comma, n);
    auto r2 = std::from_chars(begin + comma + 1, begin + line.size(), l);
    if (r1.ec != std::errc() || r1.ptr != begin + comma || r2.ec != std::errc() ||
        r2.ptr != begin + line.size() || n == 0 || l < 0) {
      cache_parse_error(path, line_no, "malformed record '" + line + "'");
    }
    if (!records.empty() && n <= records.back().first) {
      cache_parse_error(path, line_no, "n must be strictly increasing");
    }
    records.emplace_back(n, l);
  }
  put_batch(records);
}

void EllCache::spot_check(int count) const {
  if (count <= 0) return;
  // Only entries cheap to re-derive are sampled.
  constexpr Value kCheapLimit = Value{1} << 13;
  std::vector<std::pair<Value, int>> cheap;
  {
    std::shared_lock lock(*mutex_);
    for (const auto& [n, l] : entries_) {
      if (n >= kCheapLimit) break;
      cheap.emplace_back(n, l);
    }
    if (cheap.empty() && !entries_.empty()) cheap.push_back(*entries_.begin());
  }
  if (cheap.empty()) return;
  const std::size_t samples = std::min<std::size_t>(static_cast<std::size_t>(count), cheap.size());
  for (std::size_t i = 0; i < samples; ++i) {
    const auto& [n, l] = cheap[(2 * i + 1) * cheap.size() / (2 * samples)];
    const int fresh = ell(n).ell;
    if (fresh != l) {
      throw Error(ErrorKind::CacheMismatch, "cache records ell(" + std::to_string(n) + ")=" +
                                                std::to_string(l) + " but search gives " +
                                                std::to_string(fresh));
    }
  }
}

std::optional<int> EllCache::get(Value n) const {
  std::shared_lock lock(*mutex_);
  auto it = entries_.find(n);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void EllCache::put(Value n, int l) {
  put_batch({{n, l}});
}

void EllCache::put_batch(const std::vector<std::pair<Value, int>>& records) {
  std::unique_lock lock(*mutex_);
  for (const auto& [n, l] : records) {
    auto [it, inserted] = entries_.emplace(n, l);
    if (!inserted && it->second != l) {
      throw Error(ErrorKind::CacheMismatch, "conflicting cached values for n=" + std::to_string(n) +
                                                ": " + std::to_string(it->second) + " vs " +
                                                std::to_string(l));
    }
  }
}

bool EllCache::covers(Value lo, Value hi) const {
  std::shared_lock lock(*mutex_);
  if (hi <= lo) return true;
  auto it = entries_.lower_bound(lo);
  auto end = entries_.lower_bound(hi);
  return static_cast<Value>(std::distance(it, end)) == hi - lo;
}

std::size_t EllCache::size() const {
  std::shared_lock lock(*mutex_);
  return entries_.size();
}

std::vector<std::pair<Value, int>> EllCache::records() const {
  std::shared_lock lock(*mutex_);
  return {entries_.begin(), entries_.end()};
}

void EllCache::save() const {
  if (!source_) throw Error(ErrorKind::DomainError, "cache has no backing file");
  save(*source_);
}

void EllCache::save(const std::filesystem::path& path) const {
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error(ErrorKind::ParseError, "cannot write cache file " + tmp.string());
    std::shared_lock lock(*mutex_);
    for (const auto& [n, l] : entries_) out << n << ',' << l << '\n';
  }
  std::filesystem::rename(tmp, path);
}

// --- interval counts --------------------------------------------------------

EllHistogram ell_histogram(int m, EllCache* cache, int threads) {
  check_interval_parameter(m);
  const Value lo = Value{1} << m;
  const Value hi = Value{1} << (m + 1);
  if (m > kColdCountCap && (cache == nullptr || !cache->covers(lo, hi))) {
    throw Error(ErrorKind::CapExceeded,
                "m=" + std::to_string(m) + " needs a cache covering [2^m, 2^{m+1})");
  }

  const std::size_t width = static_cast<std::size_t>(hi - lo);
  std::vector<int> lengths(width, -1);
  std::vector<char> fresh(width, 0);
  if (cache != nullptr) {
    for (std::size_t i = 0; i < width; ++i) {
      if (auto l = cache->get(lo + i)) lengths[i] = *l;
    }
  }

  const int workers = std::max(1, threads);
  const std::size_t shard_count = static_cast<std::size_t>(workers) * 8;
  const std::size_t shard_width = (width + shard_count - 1) / shard_count;
  std::atomic<std::size_t> next_shard{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    try {
      for (;;) {
        const std::size_t shard = next_shard.fetch_add(1);
        if (shard >= shard_count) return;
        const std::size_t begin = shard * shard_width;
        const std::size_t end = std::min(width, begin + shard_width);
        for (std::size_t i = begin; i < end; ++i) {
          if (lengths[i] >= 0) continue;
          lengths[i] = ell(lo + i).ell;
          fresh[i] = 1;
        }
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next_shard = shard_count;
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  EllHistogram histogram;
  std::vector<std::pair<Value, int>> writes;
  for (std::size_t i = 0; i < width; ++i) {
    ++histogram[lengths[i]];
    if (fresh[i]) writes.emplace_back(lo + i, lengths[i]);
  }
  if (cache != nullptr && !writes.empty()) {
    cache->put_batch(writes);
    if (cache->source_path()) cache->save();
  }
  return histogram;
}

std::uint64_t count_from_histogram(const EllHistogram& histogram, int m, double r) {
  std::uint64_t f = 0;
  for (const auto& [l, count] : histogram) {
    if (static_cast<double>(l - m) <= r) f += count;
  }
  return f;
}

CountResult count_F(int m, double r, EllCache* cache, int threads) {
  if (!(r >= 0.0)) throw Error(ErrorKind::DomainError, "r must be a nonnegative real");
  CountResult out;
  out.m = m;
  out.r = r;
  out.histogram = ell_histogram(m, cache, threads);
  out.f = count_from_histogram(out.histogram, m, r);
  return out;
}

}  // namespace addchain
