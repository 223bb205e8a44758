#include <doctest.h>

#include "../support/oracles.hpp"
#include "addchain/bounds.hpp"
#include "addchain/chain_format.hpp"
#include "addchain/search.hpp"

using namespace addchain;

namespace {

void check_witness(const SearchResult& r) {
  CHECK(r.witness.target() == r.n);
  CHECK(static_cast<int>(r.witness.length()) == r.ell);
  CHECK(validate_chain(r.witness.values(), r.witness.operands()).steps() == r.witness.steps());
}

}  // namespace

TEST_SUITE("search") {
  TEST_CASE("small worked values") {
    CHECK(ell(1).ell == 0);
    CHECK(ell(2).ell == 1);
    CHECK(ell(5).ell == 3);
    CHECK(ell(7).ell == 4);
    CHECK(ell(9).ell == 4);
    const SearchResult ten = ell(10);
    CHECK(ten.ell == 4);
    CHECK(ten.witness.values() == std::vector<Value>{1, 2, 4, 8, 10});
    CHECK(format_chain(shortest_chain(2)) == "1,2(0,0)");
    CHECK(shortest_chain(9).length() == 4);
    for (int r = 0; r <= 20; ++r) CHECK(ell(Value{1} << r).ell == r);
  }

  TEST_CASE("agrees with full chain enumeration up to 1024") {
    const auto depth = oracle::chain_depths(1024, 10);
    for (Value n = 1; n <= 1024; ++n) {
      const SearchResult r = ell(n);
      if (depth[n] >= 0) {
        CHECK_MESSAGE(r.ell == depth[n], "n=" << n);
      } else {
        CHECK_MESSAGE(r.ell > 10, "n=" << n);
      }
      check_witness(r);
    }
  }

  TEST_CASE("configuration flags change speed only") {
    for (Value n : {Value{127}, Value{191}, Value{379}, Value{607}, Value{1087}, Value{2731}}) {
      const int base = ell(n).ell;
      for (const bool schonhage : {false, true}) {
        for (const bool gamma : {false, true}) {
          SearchConfig cfg;
          cfg.use_schonhage_pruning = schonhage;
          cfg.use_gamma_pruning = gamma;
          const SearchResult r = ell(n, cfg);
          CHECK(r.ell == base);
          check_witness(r);
        }
      }
    }
  }

  TEST_CASE("deterministic witnesses") {
    for (Value n = 300; n < 340; ++n) CHECK(ell(n).witness.steps() == ell(n).witness.steps());
  }

  TEST_CASE("no chain one step shorter exists") {
    for (Value n = 2; n <= 512; n += 7) {
      const int l = ell(n).ell;
      CHECK_FALSE(find_chain_within(n, l - 1).has_value());
      CHECK_FALSE(oracle_reaches_within(n, l - 1));
      CHECK(find_chain_within(n, l).has_value());
      CHECK(oracle_reaches_within(n, l));
    }
  }

  TEST_CASE("oracle values and cap") {
    CHECK(ell_oracle(1) == 0);
    CHECK(ell_oracle(10) == 4);
    CHECK(ell_oracle(15) == 5);
    for (Value n = 1; n <= 300; ++n) CHECK(ell_oracle(n) == ell(n).ell);
    CHECK_THROWS_AS(ell_oracle(kOracleCap + 1), Error);
    try {
      ell_oracle(kOracleCap + 1);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::CapExceeded);
    }
  }

  TEST_CASE("node budget reports an inexact upper bound") {
    SearchConfig cfg;
    cfg.node_budget = 50;
    try {
      ell(1000000007, cfg);
      FAIL("budget should run out");
    } catch (const BudgetExhausted& e) {
      CHECK(e.kind() == ErrorKind::BudgetExhausted);
      CHECK_FALSE(e.partial().exact);
      CHECK(e.partial().witness.target() == 1000000007);
      CHECK(e.partial().ell == binary_method_bound(1000000007));
    }
  }

  TEST_CASE("prunings are reported") {
    const SearchResult r = ell(2731);
    CHECK(r.nodes_expanded > 0);
    bool any = false;
    for (const auto& hit : r.prunings_applied) any = any || hit.count > 0;
    CHECK(any);
  }

  TEST_CASE("binary method chain") {
    for (Value n = 1; n < 600; ++n) {
      const Chain c = binary_method_chain(n);
      CHECK(c.target() == n);
      CHECK(static_cast<int>(c.length()) == floor_log2(n) + nu(n) - 1);
    }
  }

  TEST_CASE("zero is outside the domain") { CHECK_THROWS_AS(ell(0), Error); }
}
