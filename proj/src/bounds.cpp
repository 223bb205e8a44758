#include "addchain/bounds.hpp"

#include <cmath>
#include <limits>

#include "addchain/search.hpp"

namespace addchain {

namespace {

constexpr double kSchonhageConstant = 2.13;

// Bounds are compared against integers; a value this close above an integer
// is treated as that integer before taking the ceiling.
constexpr double kCeilGuard = 1e-9;

void require_at_least(Value n, Value lo, const char* what) {
  if (n < lo) {
    throw Error(ErrorKind::DomainError,
                std::string(what) + " requires n >= " + std::to_string(lo));
  }
}

}  // namespace

int binary_method_bound(Value n) {
  require_at_least(n, 1, "binary_method_bound");
  return floor_log2(n) + nu(n) - 1;
}

double schonhage_bound(Value n) {
  require_at_least(n, 1, "schonhage_bound");
  return std::log2(static_cast<double>(n)) + std::log2(static_cast<double>(nu(n))) -
         kSchonhageConstant;
}

int schonhage_depth(Value n) {
  const int ceil_bound = static_cast<int>(std::ceil(schonhage_bound(n) - kCeilGuard));
  return std::max(floor_log2(n), ceil_bound);
}

BrauerBound brauer_bound(Value n) {
  require_at_least(n, 2, "brauer_bound");
  const double lg = std::log2(static_cast<double>(n));
  BrauerBound best{std::numeric_limits<double>::infinity(), 1};
  // Beyond floor(log2 n) the 2^r term only grows.
  for (int r = 1; r <= floor_log2(n); ++r) {
    const double v = (1.0 + 1.0 / r) * lg + std::ldexp(1.0, r) - 2.0;
    if (v < best.value) best = {v, r};
  }
  return best;
}

std::optional<int> thurber_bound(Value n) {
  require_at_least(n, 1, "thurber_bound");
  if (nu(n) >= 9) return floor_log2(n) + 4;
  return std::nullopt;
}

BoundReport bound_report(Value n, std::optional<int> actual_ell) {
  require_at_least(n, 2, "bound_report");
  BoundReport r;
  r.n = n;
  r.nu_n = nu(n);
  r.log2_n = std::log2(static_cast<double>(n));
  r.binary_ub = binary_method_bound(n);
  const BrauerBound brauer = brauer_bound(n);
  r.brauer_ub = brauer.value;
  r.brauer_window = brauer.window;
  r.schonhage_lb = schonhage_bound(n);
  r.thurber_lb = thurber_bound(n);
  r.actual_ell = actual_ell;
  if (actual_ell) {
    const int l = *actual_ell;
    if (l < schonhage_depth(n) || l > r.binary_ub) {
      throw Error(ErrorKind::InvariantViolation,
                  "chain length " + std::to_string(l) + " for n=" + std::to_string(n) +
                      " falls outside [Schönhage, binary method]");
    }
  }
  return r;
}

ScholzReport scholz_check(int n) {
  if (n < 1) throw Error(ErrorKind::DomainError, "scholz_check requires n >= 1");
  if (n > kScholzCap) {
    throw Error(ErrorKind::CapExceeded,
                "scholz_check is capped at n <= " + std::to_string(kScholzCap));
  }
  ScholzReport r;
  r.n = n;
  r.lhs = ell((Value{1} << (n + 1)) - 1).ell;
  r.rhs = n + ell(static_cast<Value>(n) + 1).ell;
  r.holds = r.lhs <= r.rhs;
  return r;
}

TheoremEnvelope theorem_envelope(int m, double c, double epsilon) {
  if (!(c > 0.0 && c < std::log(2.0))) {
    throw Error(ErrorKind::DomainError, "c must lie in (0, log 2)");
  }
  if (!(epsilon > 0.0)) throw Error(ErrorKind::DomainError, "epsilon must be positive");
  if (m < 3) throw Error(ErrorKind::DomainError, "m must be >= 3");
  const double mm = static_cast<double>(m);
  const double log_m = std::log(mm);
  const double correction = mm * std::log(log_m) / log_m;
  TheoremEnvelope env;
  env.m = m;
  env.c = c;
  env.epsilon = epsilon;
  env.log_upper = c * mm + epsilon * correction;
  env.log_lower = c * mm - c * (1.0 + epsilon) * correction;
  return env;
}

}  // namespace addchain
