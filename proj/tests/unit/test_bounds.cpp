#include <doctest.h>

#include <cmath>
#include <random>

#include "../support/oracles.hpp"
#include "addchain/bounds.hpp"
#include "addchain/search.hpp"

using namespace addchain;

TEST_SUITE("bounds") {
  TEST_CASE("report for 15") {
    const BoundReport r = bound_report(15);
    CHECK(r.nu_n == 4);
    CHECK(r.binary_ub == 6);
    CHECK(r.schonhage_lb == doctest::Approx(std::log2(15.0) + 2 - 2.13));
    CHECK(r.schonhage_lb == doctest::Approx(3.777).epsilon(1e-3));
    CHECK(r.brauer_ub == doctest::Approx(2 * std::log2(15.0)));
    CHECK(r.brauer_window == 1);
    CHECK_FALSE(r.thurber_lb.has_value());
  }

  TEST_CASE("powers of two") {
    for (int k = 1; k < 40; ++k) {
      const BoundReport r = bound_report(Value{1} << k, k);
      CHECK(r.binary_ub == k);
      CHECK(r.schonhage_lb == doctest::Approx(k - 2.13));
    }
  }

  TEST_CASE("brauer minimum over windows") {
    for (Value n : {Value{2}, Value{15}, Value{1000}, Value{123456789}}) {
      const double lg = std::log2(static_cast<double>(n));
      double best = 1e300;
      int best_r = 0;
      for (int r = 1; r <= floor_log2(n); ++r) {
        const double v = (1.0 + 1.0 / r) * lg + std::ldexp(1.0, r) - 2;
        if (v < best) best = v, best_r = r;
      }
      const BrauerBound b = brauer_bound(n);
      CHECK(b.value == doctest::Approx(best));
      CHECK(b.window == best_r);
    }
    CHECK_THROWS_AS(brauer_bound(1), Error);
  }

  TEST_CASE("thurber bound needs nine ones") {
    CHECK_FALSE(thurber_bound(255).has_value());
    CHECK(thurber_bound(511) == 12);
    CHECK(thurber_bound(1023) == 13);
  }

  TEST_CASE("sandwich violations are reported") {
    CHECK_THROWS_AS(bound_report(15, 3), Error);
    CHECK_THROWS_AS(bound_report(15, 7), Error);
    CHECK(bound_report(15, 5).actual_ell == 5);
  }

  TEST_CASE("schonhage start depth never exceeds the true length") {
    for (Value n = 1; n <= 2048; ++n) CHECK(schonhage_depth(n) <= ell(n).ell);
  }

  TEST_CASE("scholz small cases") {
    const ScholzReport one = scholz_check(1);
    CHECK(one.lhs == 2);
    CHECK(one.rhs == 2);
    CHECK(one.holds);
    const ScholzReport two = scholz_check(2);
    CHECK(two.lhs == 4);
    CHECK(two.rhs == 4);
    const ScholzReport four = scholz_check(4);
    CHECK(four.rhs == 7);
    CHECK(four.holds);
    CHECK_THROWS_AS(scholz_check(0), Error);
    CHECK_THROWS_AS(scholz_check(kScholzCap + 1), Error);
  }

  TEST_CASE("envelope at m = 100") {
    const TheoremEnvelope e = theorem_envelope(100, 0.5, 0.1);
    CHECK(e.log_upper == doctest::Approx(53.316).epsilon(1e-4));
    CHECK(e.log_lower == doctest::Approx(31.76).epsilon(1e-3));
  }

  TEST_CASE("envelope against closed form") {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<int> m_dist(3, 1000000);
    std::uniform_real_distribution<double> c_dist(1e-6, std::log(2.0) - 1e-6);
    std::uniform_real_distribution<double> e_dist(1e-6, 5.0);
    for (int i = 0; i < 1000; ++i) {
      const int m = m_dist(rng);
      const double c = c_dist(rng);
      const double eps = e_dist(rng);
      const TheoremEnvelope e = theorem_envelope(m, c, eps);
      const oracle::Envelope ref = oracle::envelope(m, c, eps);
      CHECK(std::fabs(e.log_upper - ref.upper) <= 1e-12 * std::fabs(ref.upper));
      CHECK(std::fabs(e.log_lower - ref.lower) <= 1e-12 * std::fabs(ref.lower));
      CHECK(e.log_lower < c * m);
      CHECK(c * m < e.log_upper);
    }
  }

  TEST_CASE("envelope domain") {
    CHECK_THROWS_AS(theorem_envelope(100, 0.0, 0.1), Error);
    CHECK_THROWS_AS(theorem_envelope(100, 0.7, 0.1), Error);
    CHECK_THROWS_AS(theorem_envelope(100, 0.5, 0.0), Error);
    CHECK_THROWS_AS(theorem_envelope(2, 0.5, 0.1), Error);
  }
}
