#include <doctest.h>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <cmath>
#include <random>

#include "addchain/analysis.hpp"
#include "addchain/chain_format.hpp"
#include "addchain/search.hpp"

using namespace addchain;

namespace {

std::string kinds(const StepTaxonomy& tax) {
  std::string s;
  for (const StepKind k : tax.kinds) s += to_char(k);
  return s;
}

// Random strictly increasing chain: each step picks a random pair sum above
// the current top.
Chain random_chain(std::mt19937_64& rng, int len) {
  std::vector<Value> v{1};
  for (int j = 0; j < len; ++j) {
    std::vector<Value> next;
    for (std::size_t a = 0; a < v.size(); ++a) {
      for (std::size_t b = a; b < v.size(); ++b) {
        if (v[a] + v[b] > v.back()) next.push_back(v[a] + v[b]);
      }
    }
    v.push_back(next[std::uniform_int_distribution<std::size_t>(0, next.size() - 1)(rng)]);
  }
  return infer_operands(v);
}

}  // namespace

TEST_SUITE("analysis") {
  TEST_CASE("golden ratio test is exact") {
    using Big = boost::multiprecision::cpp_dec_float_50;
    const Big gamma = (1 + boost::multiprecision::sqrt(Big(5))) / 2;
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<Value> dist(1, Value{1} << 62);
    for (int i = 0; i < 1000000; ++i) {
      const Value x = dist(rng);
      // Keep ratios near gamma so both outcomes are exercised.
      const Value y = static_cast<Value>(static_cast<long double>(x) / kGolden) + (i % 5) - 2;
      if (y == 0) continue;
      const bool exact = exceeds_golden_ratio(x, y);
      const bool ref = Big(x) / Big(y) > gamma;
      REQUIRE(exact == ref);
    }
    CHECK(exceeds_golden_ratio(5, 3));
    CHECK_FALSE(exceeds_golden_ratio(3, 2));
    CHECK_FALSE(exceeds_golden_ratio(8, 5));
    CHECK(exceeds_golden_ratio(13, 8));
  }

  TEST_CASE("step classes") {
    CHECK(kinds(classify_steps(parse_chain("1,2,4,8,16"), 5)) == "AAAA");
    CHECK(kinds(classify_steps(parse_chain("1,2,3,5"), 8)) == "ACB");
    const StepTaxonomy t = classify_steps(parse_chain("1,2,4,5"), 8);
    CHECK(kinds(t) == "AAD");
    CHECK(t.delta == doctest::Approx(1.0 / std::log(8.0)));
    CHECK(t.A == 2);
    CHECK(t.D == 1);
    CHECK(t.A + t.B + t.C + t.D == static_cast<int>(t.length()));
    try {
      classify_steps(parse_chain("1,2"), 4);
      FAIL("m = 4 accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::MTooSmall);
    }
  }

  TEST_CASE("growth inequalities") {
    const StepTaxonomy dbl = classify_steps(parse_chain("1,2,4,8,16"), 8);
    const Lemma1Report l1 = check_lemma1(dbl, 0.0);
    CHECK(l1.lhs == 0);
    CHECK(l1.holds);
    CHECK(check_lemma2(dbl, 0.0).holds);
    CHECK(check_lemma2(dbl, 0.0).lhs == 0);

    StepTaxonomy blank;
    blank.m = 100;
    blank.delta = 1.0 / std::log(100.0);
    CHECK(check_lemma1(blank, 10.857).rhs == doctest::Approx(35.51).epsilon(1e-3));
    CHECK(check_lemma2(blank, 10.857).rhs == doctest::Approx(15.15).epsilon(1e-3));
    blank.C = 40;
    const Lemma2Report degenerate = check_lemma2(blank, 10.857);
    CHECK(degenerate.degenerate);
    CHECK_FALSE(degenerate.holds);

    const Lemma1Report nine = check_lemma1(classify_steps(parse_chain("1,2,4,5,7,9"), 8), 1.0);
    CHECK(nine.lhs == 3);
    CHECK(nine.growth_rhs == doctest::Approx(4 * std::pow(static_cast<double>(kGolden), 3)));
    CHECK(nine.growth_rhs == doctest::Approx(16.94).epsilon(1e-3));
    CHECK(nine.growth_holds);
  }

  TEST_CASE("large steps follow midsize or small steps") {
    const Chain c = parse_chain("1,2,3,5");
    CHECK(check_lemma3(c, 8).violations.empty());
    CHECK(check_lemma3(parse_chain("1,2,4,8"), 8).violations.empty());
    std::mt19937_64 rng(99);
    for (int i = 0; i < 1000; ++i) {
      const Chain r = random_chain(rng, 1 + i % 20);
      CHECK(check_lemma3(r, 5 + i % 50).violations.empty());
      const StepTaxonomy tax = classify_steps(r, 5 + i % 50);
      CHECK(check_lemma1(tax, 0).growth_holds);
    }
    for (Value n = 2; n < 512; ++n) CHECK(check_lemma3(ell(n).witness, 8).violations.empty());
  }

  TEST_CASE("blocks") {
    const Chain c = parse_chain("1,2(0,0),4(1,1),8(2,2),10(1,3),14(2,4),28(5,5)");
    const BlockStructure b = block_structure(c, 8);
    REQUIRE(b.blocks.size() == 1);
    CHECK(b.blocks[0].start == 4);
    CHECK(b.blocks[0].length == 2);
    CHECK(b.blocks[0].d_count + b.blocks[0].bc_count == 2);
    CHECK(b.blocks[0].type == 2);
    CHECK(b.blocks[0].marked);
    CHECK(b.K == 1);
    CHECK(b.K2 == 1);

    CHECK(block_structure(parse_chain("1,2,4,8"), 8).blocks.empty());

    const BlockStructure t1 = block_structure(parse_chain("1,2,3,5"), 8);
    REQUIRE(t1.blocks.size() == 1);
    CHECK(t1.blocks[0].start == 2);
    CHECK(t1.blocks[0].length == 2);
    CHECK(t1.blocks[0].type == 1);
    CHECK(t1.K1 == 1);

    // Type 1 propagates through a later block that reuses a type-1 element.
    const BlockStructure chain_of_types = block_structure(parse_chain("1,2,3(0,1),6(2,2),9(2,3)"), 8);
    REQUIRE(chain_of_types.blocks.size() == 2);
    CHECK(chain_of_types.blocks[1].type == 1);
    CHECK(chain_of_types.K == chain_of_types.K1 + chain_of_types.K2);
  }

  TEST_CASE("domination") {
    const Chain a = parse_chain("1,2,4,5");
    const Chain b = parse_chain("1,2,3,5");
    const DominationVerdict v = dominates(a, b);
    CHECK(v.dominates);
    CHECK(v.first_strict_index == 2);
    CHECK_FALSE(dominates(b, a).dominates);
    CHECK(dominates(b, a).reason == "NotBelow at index 2");
    CHECK_FALSE(dominates(a, a).dominates);
    CHECK(dominates(a, a).reason == "Identical");
    CHECK(dominates(a, parse_chain("1,2,4")).reason == "LengthMismatch");
    CHECK(dominates(a, parse_chain("1,2,4,6")).reason == "TargetMismatch");
    // Irreflexive and antisymmetric over a corpus of equal-length chains to 30.
    std::vector<Chain> corpus;
    for (const char* s : {"1,2,4,8,16,24,28,30", "1,2,3,6,12,24,27,30", "1,2,4,6,12,24,28,30",
                          "1,2,3,5,10,20,25,30", "1,2,4,5,10,20,25,30"}) {
      corpus.push_back(parse_chain(s));
    }
    for (const auto& x : corpus) {
      CHECK_FALSE(dominates(x, x).dominates);
      for (const auto& y : corpus) CHECK_FALSE((dominates(x, y).dominates && dominates(y, x).dominates));
    }
  }

  TEST_CASE("marked steps") {
    CHECK(find_marked_steps(parse_chain("1,2,4,8,10,20")) == std::vector<std::size_t>{3});
    CHECK(find_marked_steps(parse_chain("1,2,4,5,8")) == std::vector<std::size_t>{3});
    CHECK(find_marked_steps(parse_chain("1,2,4,8")).empty());
    const Chain c = parse_chain("1,2,4,8,10,20");
    const Chain rewritten = rewrite_unused_doubling(c, 3);
    CHECK(rewritten.values() == std::vector<Value>{1, 2, 4, 5, 10, 20});
    CHECK(dominates(c, rewritten).dominates);
    CHECK_THROWS_AS(rewrite_unused_doubling(c, 2), Error);
    // Minimal chains have no removable steps.
    for (Value n = 2; n < 1024; ++n) {
      const Chain w = ell(n).witness;
      for (const std::size_t j : find_marked_steps(w)) {
        // Only the rewrite pattern can fire; a removable step would shorten it.
        CHECK_NOTHROW(rewrite_unused_doubling(w, j));
      }
    }
  }
}
