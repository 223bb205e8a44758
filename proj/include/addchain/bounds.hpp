#pragma once

#include <optional>

#include "addchain/chain.hpp"

namespace addchain {

// Classical bounds on the shortest chain length of n.

/// floor(log2 n) + nu(n) - 1, the length of the binary method chain.
int binary_method_bound(Value n);

/// log2 n + log2 nu(n) - 2.13.
double schonhage_bound(Value n);

/// ceil of the Schönhage bound, clamped below by floor(log2 n). Guarded
/// against rounding just above an integer.
int schonhage_depth(Value n);

/// min over 1 <= r <= floor(log2 n) of (1 + 1/r) log2 n + 2^r - 2. Also
/// reports the minimizing r. Requires n >= 2.
struct BrauerBound {
  double value = 0.0;
  int window = 1;
};
BrauerBound brauer_bound(Value n);

/// floor(log2 n) + 4 when nu(n) >= 9, otherwise no bound.
std::optional<int> thurber_bound(Value n);

struct BoundReport {
  Value n = 2;
  int nu_n = 1;
  double log2_n = 0.0;
  int binary_ub = 0;
  double brauer_ub = 0.0;
  int brauer_window = 1;
  double schonhage_lb = 0.0;
  std::optional<int> thurber_lb;
  std::optional<int> actual_ell;
};

/// Evaluates every bound for n >= 2. When `actual_ell` is given it is echoed
/// and checked against the sandwich; a violation throws InvariantViolation.
BoundReport bound_report(Value n, std::optional<int> actual_ell = std::nullopt);

struct ScholzReport {
  int n = 1;
  int lhs = 0;  // shortest chain length of 2^{n+1} - 1
  int rhs = 0;  // n + shortest chain length of n + 1
  bool holds = false;
};

inline constexpr int kScholzCap = 12;

/// Compares the shortest chain lengths of 2^{n+1} - 1 and n + 1, 1 <= n <= 12.
ScholzReport scholz_check(int n);

struct TheoremEnvelope {
  int m = 3;
  double c = 0.0;
  double epsilon = 0.0;
  double log_upper = 0.0;
  double log_lower = 0.0;
};

/// Natural-log envelope for the count of n in [2^m, 2^{m+1}) with chain
/// length at most m + cm/log m:
///   upper = cm + eps m loglog m / log m
///   lower = cm - c (1 + eps) m loglog m / log m
/// Requires 0 < c < log 2, eps > 0, m >= 3.
TheoremEnvelope theorem_envelope(int m, double c, double epsilon);

}  // namespace addchain
