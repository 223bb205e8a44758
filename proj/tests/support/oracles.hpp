#pragma once

// Independent reference computations used only by the tests. None of these
// share code with the library; they are slow and deliberately simple.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace oracle {

// Shortest chain lengths for every n <= limit whose length is <= max_len, by
// enumerating all strictly increasing chains. Entries left at -1 need more
// than max_len steps.
inline std::vector<int> chain_depths(std::uint64_t limit, int max_len) {
  std::vector<int> depth(limit + 1, -1);
  std::vector<std::uint64_t> chain{1};
  depth[1] = 0;
  auto rec = [&](auto&& self) -> void {
    const int len = static_cast<int>(chain.size()) - 1;
    if (len == max_len) return;
    const std::uint64_t top = chain.back();
    std::vector<std::uint64_t> next;
    for (std::size_t i = 0; i < chain.size(); ++i) {
      for (std::size_t j = i; j < chain.size(); ++j) {
        const std::uint64_t v = chain[i] + chain[j];
        if (v > top && v <= limit) next.push_back(v);
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    for (const std::uint64_t v : next) {
      if (depth[v] < 0 || depth[v] > len + 1) depth[v] = len + 1;
      chain.push_back(v);
      self(self);
      chain.pop_back();
    }
  };
  rec(rec);
  return depth;
}

// Number of (k-1)-tuples of nonnegative integers summing to total, counted
// by recursion.
inline std::uint64_t compositions(int parts, int total) {
  if (parts == 0) return total == 0 ? 1 : 0;
  std::uint64_t n = 0;
  for (int first = 0; first <= total; ++first) n += compositions(parts - 1, total - first);
  return n;
}

struct Envelope {
  long double upper;
  long double lower;
};

inline Envelope envelope(int m, long double c, long double eps) {
  const long double lm = std::log(static_cast<long double>(m));
  const long double ratio = m * std::log(lm) / lm;
  return {c * m + eps * ratio, c * m - c * (1 + eps) * ratio};
}

}  // namespace oracle
