#include "addchain/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace addchain {

namespace {

__extension__ typedef unsigned __int128 Wide;

constexpr long double kGuardBand = 1e-15L;

// a >= (1 + delta) b with delta = 1/log m, i.e. (a - b) log m >= b.
bool at_least_one_plus_delta(Value a, Value b, long double log_m, std::size_t index) {
  const long double lhs = static_cast<long double>(a - b) * log_m;
  const long double rhs = static_cast<long double>(b);
  if (std::fabs(lhs - rhs) <= kGuardBand * std::max(std::fabs(lhs), std::fabs(rhs))) {
    throw Error(ErrorKind::PrecisionEscalation,
                "(1 + delta) comparison at index " + std::to_string(index) +
                    " is inside the precision guard band",
                index);
  }
  return lhs >= rhs;
}

long double log2_golden() { return std::log2(kGolden); }

// Some step t > `after` has a_t = a_s + a_p with p < t.
bool used_after(const std::vector<Value>& a, std::size_t s, std::size_t after) {
  for (std::size_t t = after + 1; t < a.size(); ++t) {
    if (a[t] <= a[s]) continue;
    const Value want = a[t] - a[s];
    if (std::binary_search(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(t), want)) {
      return true;
    }
  }
  return false;
}

// For a doubling step j followed by a_{j+1} = a_j + a_s with a_s a doubling
// step, s < j: that s.
std::optional<std::size_t> doubling_partner(const Chain& chain, const std::vector<Value>& a,
                                            std::size_t j) {
  if (j == 0 || j + 1 >= a.size() || !chain.is_doubling(j)) return std::nullopt;
  if (a[j + 1] == 2 * a[j]) return std::nullopt;
  const Value want = a[j + 1] - a[j];
  auto first = a.begin() + 1;
  auto last = a.begin() + static_cast<std::ptrdiff_t>(j);
  auto it = std::lower_bound(first, last, want);
  if (it == last || *it != want) return std::nullopt;
  const auto s = static_cast<std::size_t>(it - a.begin());
  if (!chain.is_doubling(s)) return std::nullopt;
  return s;
}

}  // namespace

// gamma is the positive root of x^2 - x - 1, so a/b > gamma iff
// a^2 > ab + b^2. Equality cannot occur for integers.
bool exceeds_golden_ratio(Value a, Value b) {
  const Wide wa = a;
  const Wide wb = b;
  return wa * wa > wa * wb + wb * wb;
}

char to_char(StepKind kind) noexcept {
  switch (kind) {
    case StepKind::A: return 'A';
    case StepKind::B: return 'B';
    case StepKind::C: return 'C';
    case StepKind::D: return 'D';
  }
  return '?';
}

StepTaxonomy classify_steps(const Chain& chain, int m) {
  if (m < 5) throw Error(ErrorKind::MTooSmall, "step classes need m >= 5");
  const long double log_m = std::log(static_cast<long double>(m));
  StepTaxonomy tax;
  tax.m = m;
  tax.delta = static_cast<double>(1.0L / log_m);
  tax.target = chain.target();
  tax.kinds.reserve(chain.length());
  for (std::size_t j = 1; j <= chain.length(); ++j) {
    const Value cur = chain[j];
    const Value prev = chain[j - 1];
    StepKind kind;
    if (chain.is_doubling(j)) {
      kind = StepKind::A;
      ++tax.A;
    } else if (exceeds_golden_ratio(cur, prev)) {
      kind = StepKind::B;
      ++tax.B;
    } else if (at_least_one_plus_delta(cur, prev, log_m, j)) {
      kind = StepKind::C;
      ++tax.C;
    } else {
      kind = StepKind::D;
      ++tax.D;
    }
    tax.kinds.push_back(kind);
  }
  return tax;
}

Lemma1Report check_lemma1(const StepTaxonomy& tax, double r) {
  const long double lg = log2_golden();
  Lemma1Report rep;
  const int nondoubling = tax.B + tax.C + tax.D;
  rep.lhs = nondoubling;
  rep.rhs = static_cast<double>(static_cast<long double>(r) / (1.0L - lg));
  rep.holds = rep.lhs <= rep.rhs + 1e-9;

  const long double log2_target = std::log2(static_cast<long double>(tax.target));
  const long double log2_growth = tax.A + nondoubling * lg;
  rep.growth_lhs = static_cast<double>(tax.target);
  rep.growth_rhs = static_cast<double>(std::exp2(log2_growth));
  rep.growth_holds = log2_target <= log2_growth;
  return rep;
}

Lemma2Report check_lemma2(const StepTaxonomy& tax, double r) {
  const long double lg = log2_golden();
  const long double small_loss = 1.0L - std::log2(1.0L + static_cast<long double>(tax.delta));
  Lemma2Report rep;
  rep.lhs = tax.D;
  const long double rhs = (static_cast<long double>(r) - tax.C * (1.0L - lg)) / small_loss;
  rep.rhs = static_cast<double>(rhs);
  rep.degenerate = rhs < 0;
  rep.holds = !rep.degenerate && rep.lhs <= rep.rhs + 1e-9;
  return rep;
}

Lemma3Report check_lemma3(const Chain& chain, int m) {
  const StepTaxonomy tax = classify_steps(chain, m);
  Lemma3Report rep;
  for (std::size_t j = 1; j <= tax.length(); ++j) {
    if (tax.kind_of(j) != StepKind::B) continue;
    const bool ok = j >= 2 && (tax.kind_of(j - 1) == StepKind::C || tax.kind_of(j - 1) == StepKind::D);
    if (!ok) rep.violations.push_back(j);
  }
  return rep;
}

BlockStructure block_structure(const Chain& chain, int m) {
  const StepTaxonomy tax = classify_steps(chain, m);
  const auto& steps = chain.steps();
  BlockStructure out;
  std::vector<char> in_type1(steps.size(), 0);

  std::size_t j = 1;
  while (j <= tax.length()) {
    if (tax.kind_of(j) == StepKind::A) {
      ++j;
      continue;
    }
    Block block;
    block.start = j;
    while (j <= tax.length() && tax.kind_of(j) != StepKind::A) {
      ++block.length;
      if (tax.kind_of(j) == StepKind::D) {
        ++block.d_count;
      } else {
        ++block.bc_count;
      }
      ++j;
    }

    bool type1 = false;
    bool marked = true;
    for (std::size_t s = block.start; s < block.start + block.length; ++s) {
      const OperandPair op = *steps[s].operands;
      for (const std::size_t idx : {op.i, op.s}) {
        if (idx == 0 || in_type1[idx]) type1 = true;
        if (idx < block.start && !chain.is_doubling(idx)) marked = false;
      }
    }
    block.type = type1 ? 1 : 2;
    block.marked = marked;
    if (type1) {
      for (std::size_t s = block.start; s < block.start + block.length; ++s) in_type1[s] = 1;
      ++out.K1;
    } else {
      ++out.K2;
    }
    out.blocks.push_back(block);
  }
  out.K = out.blocks.size();
  return out;
}

DominationVerdict dominates(const Chain& a, const Chain& b) {
  DominationVerdict v;
  if (a.length() != b.length()) {
    v.reason = "LengthMismatch";
    return v;
  }
  if (a.target() != b.target()) {
    v.reason = "TargetMismatch";
    return v;
  }
  for (std::size_t j = 0; j <= a.length(); ++j) {
    if (b[j] > a[j]) {
      v.reason = "NotBelow at index " + std::to_string(j);
      return v;
    }
    if (b[j] < a[j] && !v.first_strict_index) v.first_strict_index = j;
  }
  if (!v.first_strict_index) {
    v.reason = "Identical";
    return v;
  }
  v.dominates = true;
  return v;
}

std::vector<std::size_t> find_marked_steps(const Chain& chain) {
  const std::vector<Value> a = chain.values();
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s + 1 < a.size(); ++s) {
    if (!used_after(a, s, s)) {
      out.push_back(s);
      continue;
    }
    if (doubling_partner(chain, a, s) && !used_after(a, s, s + 1)) out.push_back(s);
  }
  return out;
}

Chain rewrite_unused_doubling(const Chain& chain, std::size_t j) {
  const std::vector<Value> a = chain.values();
  const auto s = doubling_partner(chain, a, j);
  if (!s || used_after(a, j, j + 1)) {
    throw Error(ErrorKind::InvariantViolation,
                "step " + std::to_string(j) + " does not match the doubling rewrite pattern", j);
  }
  std::vector<Value> b = a;
  b[j] = b[j - 1] + b[*s - 1];
  b[j + 1] = 2 * b[j];
  return infer_operands(b);
}

}  // namespace addchain
