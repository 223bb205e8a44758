#include <doctest.h>

#include <vector>

#include "addchain/chain.hpp"
#include "addchain/chain_format.hpp"

using namespace addchain;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvariantViolation;
}

std::optional<std::size_t> index_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.index();
  }
  return std::nullopt;
}

}  // namespace

TEST_SUITE("chain") {
  TEST_CASE("explicit operands for the chain to 9") {
    const std::vector<Value> v{1, 2, 4, 5, 7, 9};
    const std::vector<OperandPair> ops{{0, 0}, {1, 1}, {0, 2}, {1, 3}, {2, 3}};
    const Chain c = validate_chain(v, ops);
    CHECK(c.length() == 5);
    CHECK(c.target() == 9);
    CHECK(c.values() == v);
    CHECK(c.operands() == ops);
  }

  TEST_CASE("trivial chain") {
    const std::vector<Value> v{1};
    const Chain c = validate_chain(v, {});
    CHECK(c.length() == 0);
    CHECK(c.target() == 1);
    CHECK(Chain().length() == 0);
  }

  TEST_CASE("validation errors name the first bad index") {
    const std::vector<Value> bad_sum{1, 2, 5};
    const std::vector<OperandPair> ops{{0, 0}, {1, 1}};
    CHECK(kind_of([&] { validate_chain(bad_sum, ops); }) == ErrorKind::SumMismatch);
    CHECK(index_of([&] { validate_chain(bad_sum, ops); }) == 2);

    const std::vector<Value> no_one{2, 4};
    const std::vector<OperandPair> one_op{{0, 0}};
    CHECK(kind_of([&] { validate_chain(no_one, one_op); }) == ErrorKind::NotStartingAtOne);

    const std::vector<Value> flat{1, 2, 2};
    const std::vector<OperandPair> flat_ops{{0, 0}, {0, 0}};
    CHECK(kind_of([&] { validate_chain(flat, flat_ops); }) == ErrorKind::NotIncreasing);
    CHECK(index_of([&] { validate_chain(flat, flat_ops); }) == 2);

    const std::vector<Value> fwd{1, 2, 4};
    const std::vector<OperandPair> fwd_ops{{0, 0}, {2, 2}};
    CHECK(kind_of([&] { validate_chain(fwd, fwd_ops); }) == ErrorKind::BadOperandIndex);

    const std::vector<Value> big{1, 2};
    const std::vector<OperandPair> too_few{};
    CHECK_THROWS_AS(validate_chain(big, too_few), Error);
  }

  TEST_CASE("inferred operands take the lexicographically smallest pair") {
    const std::vector<Value> v{1, 2, 3, 5};
    const Chain c = infer_operands(v);
    CHECK(c.operands() == std::vector<OperandPair>{{0, 0}, {0, 1}, {1, 2}});
    const std::vector<Value> d{1, 2, 4, 8};
    CHECK(infer_operands(d).operands() == std::vector<OperandPair>{{0, 0}, {1, 1}, {2, 2}});
    const std::vector<Value> bad{1, 2, 5};
    CHECK(kind_of([&] { infer_operands(bad); }) == ErrorKind::NoDecomposition);
    CHECK(index_of([&] { infer_operands(bad); }) == 2);
  }

  TEST_CASE("values above 2^63 are rejected") {
    std::vector<Value> v{1};
    for (int i = 0; i < 63; ++i) v.push_back(v.back() * 2);
    CHECK(infer_operands(v).target() == kMaxValue);
    v.push_back(v.back() + v.back() / 2);
    CHECK(kind_of([&] { infer_operands(v); }) == ErrorKind::OverflowRisk);
  }

  TEST_CASE("doubling and star predicates") {
    const Chain c = parse_chain("1,2,3,6,12,13");
    CHECK(c.is_doubling(1));
    CHECK_FALSE(c.is_doubling(2));
    CHECK(c.is_doubling(3));
    CHECK(c.is_star());
    CHECK_FALSE(parse_chain("1,2,3,4(1,1),7(2,3)").is_star());
    CHECK_FALSE(parse_chain("1,2,4,5(0,2),6(1,2)").is_star());
    CHECK(parse_chain("1,2,3,4(0,2),7(2,3)").is_star());
  }

  TEST_CASE("nu and floor_log2") {
    CHECK(nu(7) == 3);
    CHECK(nu(10) == 2);
    CHECK(floor_log2(1) == 0);
    CHECK(floor_log2(8) == 3);
    CHECK(floor_log2(9) == 3);
    for (int t = 0; t <= 60; ++t) {
      CHECK(nu(Value{1} << t) == 1);
      if (t > 0) CHECK(nu((Value{1} << t) - 1) == t);
      CHECK(floor_log2(Value{1} << t) == t);
      CHECK(floor_log2((Value{1} << (t + 1)) - 1) == t);
    }
    CHECK_THROWS_AS(nu(0), Error);
    CHECK_THROWS_AS(floor_log2(0), Error);
  }

  TEST_CASE("text format round trip") {
    const Chain c = parse_chain("1,2(0,0),3(0,1),5(1,2)");
    CHECK(format_chain(c) == "1,2(0,0),3(0,1),5(1,2)");
    CHECK(format_chain(c, false) == "1,2,3,5");
    CHECK(parse_chain(" 1, 2 ,3,5 ").values() == c.values());
    const Chain mixed = parse_chain("1,2,4(1,1),5(0,2)");
    CHECK(validate_chain(mixed.values(), mixed.operands()).steps() == mixed.steps());
    CHECK(kind_of([] { parse_chain("1,2(0,0"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { parse_chain("1,x"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { parse_chain(""); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { parse_chain("1,2(0,0),5(1,1)"); }) == ErrorKind::SumMismatch);
  }
}
