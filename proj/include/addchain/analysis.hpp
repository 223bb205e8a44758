#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "addchain/chain.hpp"

namespace addchain {

/// The golden ratio (1 + sqrt 5) / 2.
inline constexpr long double kGolden = 1.6180339887498948482045868343656381L;

/// Step classes relative to a parameter m, with delta = 1/log m:
///   A  doubling,  a_j = 2 a_{j-1}
///   B  large,     gamma a_{j-1} < a_j < 2 a_{j-1}
///   C  midsize,   (1 + delta) a_{j-1} <= a_j < gamma a_{j-1}
///   D  small,     a_j < (1 + delta) a_{j-1}
enum class StepKind { A, B, C, D };

/// a > gamma * b, decided exactly in integers.
bool exceeds_golden_ratio(Value a, Value b);

char to_char(StepKind kind) noexcept;

struct StepTaxonomy {
  int m = 5;
  double delta = 0.0;
  Value target = 1;
  std::vector<StepKind> kinds;  // kinds[j - 1] labels step j
  int A = 0;
  int B = 0;
  int C = 0;
  int D = 0;

  StepKind kind_of(std::size_t j) const { return kinds.at(j - 1); }
  std::size_t length() const { return kinds.size(); }
};

/// Labels every step. The gamma test is exact integer arithmetic; the
/// (1 + delta) test runs in extended precision and throws PrecisionEscalation
/// if a comparison lands within a 1e-15 relative guard band. m >= 5.
StepTaxonomy classify_steps(const Chain& chain, int m);

struct InequalityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

struct Lemma1Report : InequalityReport {
  // Growth check on the chain itself: target <= 2^A gamma^{B+C+D}.
  double growth_lhs = 0.0;
  double growth_rhs = 0.0;
  bool growth_holds = false;
};

/// B + C + D <= r / (1 - log2 gamma), plus the growth check above.
Lemma1Report check_lemma1(const StepTaxonomy& tax, double r);

struct Lemma2Report : InequalityReport {
  /// The bound itself is negative, so no taxonomy can satisfy it.
  bool degenerate = false;
};

/// D <= (r - C (1 - log2 gamma)) / (1 - log2(1 + delta)).
Lemma2Report check_lemma2(const StepTaxonomy& tax, double r);

struct Lemma3Report {
  /// Indices of large steps whose predecessor is neither midsize nor small.
  std::vector<std::size_t> violations;
};

Lemma3Report check_lemma3(const Chain& chain, int m);

struct Block {
  std::size_t start = 0;     // index of the first step
  std::size_t length = 0;    // L
  std::size_t d_count = 0;   // L', small steps
  std::size_t bc_count = 0;  // L'', large and midsize steps
  int type = 2;
  bool marked = false;
};

struct BlockStructure {
  std::vector<Block> blocks;
  std::size_t K = 0;
  std::size_t K1 = 0;
  std::size_t K2 = 0;
};

/// Maximal runs of consecutive non-doubling steps. A block has type 1 when
/// one of its additions uses a_0 or an element of an earlier type-1 block,
/// type 2 otherwise. A block is marked when every operand it takes from
/// before its start is a doubling step.
BlockStructure block_structure(const Chain& chain, int m);

struct DominationVerdict {
  bool dominates = false;
  std::optional<std::size_t> first_strict_index;
  std::string reason;  // why not, when dominates is false
};

/// `a` dominates `b`: same length and target, b_j <= a_j everywhere and
/// strictly somewhere.
DominationVerdict dominates(const Chain& a, const Chain& b);

/// Steps flagged by the two marking patterns:
///   - a non-final step no later step uses; it can be removed.
///   - a doubling step a_j followed by a_{j+1} = a_j + a_s with a_s also a
///     doubling step (s < j), where a_j is not used after j + 1; the chain
///     then dominates rewrite_unused_doubling(chain, j).
std::vector<std::size_t> find_marked_steps(const Chain& chain);

/// The chain with b_j = a_{j-1} + a_{s-1} and b_{j+1} = 2 b_j, for a step j
/// flagged by the doubling pattern. Throws InvariantViolation otherwise.
Chain rewrite_unused_doubling(const Chain& chain, std::size_t j);

}  // namespace addchain
