#include "addchain/family.hpp"

#include <cmath>
#include <limits>

namespace addchain {

namespace {

__extension__ typedef unsigned __int128 Wide;
constexpr Wide kSaturated = std::numeric_limits<std::uint64_t>::max();

[[noreturn]] void violation(const std::string& what) {
  throw Error(ErrorKind::InvariantViolation, what);
}

// Binomial coefficient, zero outside 0 <= r <= n; saturates at uint64 max.
Wide binomial(std::int64_t n, std::int64_t r) {
  if (r < 0 || n < 0 || r > n) return 0;
  r = std::min(r, n - r);
  Wide acc = 1;
  for (std::int64_t i = 1; i <= r; ++i) {
    // acc * (n - r + i) / i stays integral at every step.
    acc = acc * static_cast<Wide>(n - r + i) / static_cast<Wide>(i);
    if (acc > kSaturated) return kSaturated + 1;
  }
  return acc;
}

Wide saturating_mul(Wide a, Wide b) {
  if (a == 0 || b == 0) return 0;
  if (a > kSaturated || b > kSaturated) return kSaturated + 1;
  const Wide p = a * b;
  return p > kSaturated ? kSaturated + 1 : p;
}

std::uint64_t clamp64(Wide v) {
  return v > kSaturated ? std::numeric_limits<std::uint64_t>::max() : static_cast<std::uint64_t>(v);
}

Value window_low(int u) { return Value{1} << (u - 1); }
Value window_high(int u) { return Value{1} << u; }

std::uint64_t window_count(int u) { return u == 1 ? 1 : std::uint64_t{1} << (u - 2); }

void check_shape(const FamilyParams& p) {
  if (p.u < 1 || p.k < 1 || p.digits < 1) {
    throw Error(ErrorKind::DomainError, "digits, u and k must be positive");
  }
  if (p.digits > 63) {
    throw Error(ErrorKind::OverflowRisk, "targets with more than 63 binary digits do not fit");
  }
}

// Next composition of the same total into s.size() nonnegative parts, in
// lexicographic order; false after the last one.
bool next_composition(std::vector<int>& s) {
  const std::size_t n = s.size();
  if (n < 2) return false;
  // Rightmost slot i < n - 1 with a positive tail after it.
  std::size_t last_positive = n;
  for (std::size_t t = n; t-- > 0;) {
    if (s[t] > 0) {
      last_positive = t;
      break;
    }
  }
  if (last_positive == n || last_positive == 0) return false;
  const std::size_t i = last_positive - 1;
  int tail = 0;
  for (std::size_t t = i + 1; t < n; ++t) {
    tail += s[t];
    s[t] = 0;
  }
  ++s[i];
  s[n - 1] = tail - 1;
  return true;
}

}  // namespace

void validate_params(const FamilyParams& params) {
  check_shape(params);
  if (static_cast<std::int64_t>(params.k) * params.u > params.digits) {
    violation("parameter choice: k*u <= digits fails");
  }
  const double cost = std::ldexp(1.0, params.u) + params.k - params.u;
  if (cost > params.budget_r) {
    violation("parameter choice: 2^u + k - u <= r fails (" + std::to_string(cost) + " > " +
              std::to_string(params.budget_r) + ")");
  }
}

std::int64_t family_length_bound(const FamilyParams& params) {
  return (std::int64_t{1} << params.u) + params.digits - params.u + params.k - 2;
}

FamilyInstance generate_chain(const FamilyParams& params, const std::vector<int>& s,
                              const std::vector<Value>& U) {
  validate_params(params);
  const auto k = static_cast<std::size_t>(params.k);
  const int u = params.u;
  if (s.size() + 1 != k) violation("gap layout: expected k - 1 zero-run lengths");
  if (U.size() != k) violation("window choice: expected k windows");
  std::int64_t digit_sum = static_cast<std::int64_t>(k) * u;
  for (const int gap : s) {
    if (gap < 0) violation("gap layout: zero-run lengths must be nonnegative");
    digit_sum += gap;
  }
  if (digit_sum != params.digits) violation("gap layout: sum(s) + k*u = digits fails");
  for (const Value w : U) {
    if (w % 2 == 0 || w < window_low(u) || w >= window_high(u)) {
      violation("window choice: " + std::to_string(w) + " is not an odd u-bit integer");
    }
  }

  // Bit concatenation U_1 0^{s_1} U_2 ... U_k.
  Value expected = U[0];
  for (std::size_t j = 1; j < k; ++j) expected = (expected << (s[j - 1] + u)) | U[j];

  // Initial run 1, 2, ..., 2^u - 1 (stopping at U_1 when there is only one window).
  const Value run_end = k == 1 ? U[0] : window_high(u) - 1;
  std::vector<Value> values{1};
  std::vector<OperandPair> ops;
  for (Value v = 2; v <= run_end; ++v) {
    const std::size_t prev = values.size() - 1;
    ops.push_back(v == 2 ? OperandPair{0, 0} : OperandPair{0, prev});
    values.push_back(v);
  }
  // Window U lives at index U - 1 of the run.
  std::size_t cur = static_cast<std::size_t>(U[0] - 1);
  for (std::size_t j = 1; j < k; ++j) {
    const int doublings = s[j - 1] + u;
    for (int d = 0; d < doublings; ++d) {
      ops.push_back({cur, cur});
      values.push_back(2 * values[cur]);
      cur = values.size() - 1;
    }
    ops.push_back({static_cast<std::size_t>(U[j] - 1), cur});
    values.push_back(values[cur] + U[j]);
    cur = values.size() - 1;
  }

  FamilyInstance out;
  out.params = params;
  out.s = s;
  out.U = U;
  out.chain = validate_chain(values, ops);
  out.N = out.chain.target();
  if (out.N != expected) violation("concatenation: chain target differs from the bit layout");
  if (static_cast<std::int64_t>(out.chain.length()) > family_length_bound(params)) {
    violation("length bound: chain longer than 2^u + digits - u + k - 2");
  }
  out.listed_index = k == 1 ? static_cast<std::int64_t>(out.chain.length())
                            : static_cast<std::int64_t>(out.chain.length()) + 1;
  return out;
}

FamilySize family_size(const FamilyParams& params) {
  check_shape(params);
  FamilySize out;
  out.window_choices = window_count(params.u);
  const std::int64_t free = params.digits - static_cast<std::int64_t>(params.k) * params.u;
  Wide gaps = 0;
  if (free >= 0) gaps = params.k == 1 ? (free == 0 ? 1 : 0) : binomial(free + params.k - 2, params.k - 2);
  Wide windows = 1;
  for (int j = 0; j < params.k; ++j) windows = saturating_mul(windows, out.window_choices);
  out.gap_choices = clamp64(gaps);
  out.count = clamp64(saturating_mul(windows, gaps));
  const Wide literal = free >= 0 ? binomial(free + params.k - 2, params.k - 1) : 0;
  out.binomial_k_minus_1 = clamp64(saturating_mul(windows, literal));
  return out;
}

void enumerate_family(const FamilyParams& params,
                      const std::function<bool(const FamilyInstance&)>& visit) {
  validate_params(params);
  const FamilySize size = family_size(params);
  if (size.count > kFamilyEnumerationCap) {
    throw Error(ErrorKind::CapExceeded, "family has " + std::to_string(size.count) +
                                            " members, above the enumeration cap of " +
                                            std::to_string(kFamilyEnumerationCap));
  }
  if (size.count == 0) return;

  const auto k = static_cast<std::size_t>(params.k);
  const int free = params.digits - params.k * params.u;
  const Value lo = window_low(params.u) | 1;
  const Value hi = window_high(params.u);

  std::vector<int> s(k - 1, 0);
  if (k > 1) s.back() = free;
  for (;;) {
    std::vector<Value> U(k, lo);
    for (;;) {
      if (!visit(generate_chain(params, s, U))) return;
      std::size_t p = k;
      while (p > 0 && U[p - 1] + 2 >= hi) U[--p] = lo;
      if (p == 0) break;
      U[p - 1] += 2;
    }
    if (!next_composition(s)) return;
  }
}

std::vector<FamilyInstance> collect_family(const FamilyParams& params) {
  std::vector<FamilyInstance> out;
  enumerate_family(params, [&](const FamilyInstance& inst) {
    out.push_back(inst);
    return true;
  });
  return out;
}

ParamChoice choose_params(int m, double c) {
  if (!(c > 0.0 && c < std::log(2.0))) throw Error(ErrorKind::DomainError, "c must lie in (0, log 2)");
  if (m < 2) throw Error(ErrorKind::DomainError, "m must be >= 2");
  ParamChoice out;
  out.m = m;
  out.c = c;
  const double log_m = std::log(static_cast<double>(m));
  out.r = c * m / log_m;
  out.y = c * m / (log_m * log_m);
  const double k = std::nearbyint(out.r - out.y);
  const double gap = out.r - k;
  const double u = gap > 0 ? std::nearbyint(std::log2(gap)) : 0.0;
  out.params.digits = m;
  out.params.k = static_cast<int>(k);
  out.params.u = static_cast<int>(u);
  out.params.budget_r = out.r;

  if (out.params.k < 1) out.failing.emplace_back("k >= 1");
  if (out.params.u < 1) out.failing.emplace_back("u >= 1");
  if (gap < 4) out.failing.emplace_back("r - k >= 4");
  if (static_cast<double>(k) * u > m) out.failing.emplace_back("ku <= digits");
  if (std::ldexp(1.0, out.params.u) + k - u > out.r) out.failing.emplace_back("2^u + k - u <= r");
  return out;
}

}  // namespace addchain
