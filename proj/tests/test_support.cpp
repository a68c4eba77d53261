// Integer helpers, exact counts, rationals, expressions and grids.

#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "dioph/count.hpp"
#include "dioph/grid.hpp"
#include "dioph/int_math.hpp"
#include "dioph/rational.hpp"

using namespace dioph;

TEST_CASE("count formatting and parsing") {
  CHECK(to_string(Count{0}) == "0");
  CHECK(to_string(Count{1234567890123ULL}) == "1234567890123");
  const Count big = Count{UINT64_MAX} * 1000 + 7;
  CHECK(to_string(big) == "18446744073709551615007");
  CHECK(parse_count("18446744073709551615007") == big);
  CHECK(parse_count(to_string(~Count{0})) == ~Count{0});
  CHECK_THROWS_AS(parse_count("340282366920938463463374607431768211456"), CountOverflow);
  CHECK_THROWS_AS(parse_count("12a"), std::invalid_argument);
  CHECK_THROWS_AS(parse_count(""), std::invalid_argument);
  CHECK(to_long_double(Count{1} << 100) == doctest::Approx(std::ldexp(1.0L, 100)));
}

TEST_CASE("checked arithmetic") {
  CHECK(checked_add(2, 3) == 5);
  CHECK_THROWS_AS(checked_add(~Count{0}, 1), CountOverflow);
  CHECK(checked_mul(Count{1} << 64, 3) == (Count{3} << 64));
  CHECK_THROWS_AS(checked_mul(Count{1} << 64, Count{1} << 64), CountOverflow);
}

TEST_CASE("integer roots") {
  CHECK(iroot(0, 2) == 0);
  CHECK(iroot(24, 2) == 4);
  CHECK(iroot(25, 2) == 5);
  CHECK(iroot(UINT64_MAX, 2) == 4294967295ULL);
  CHECK(iroot(UINT64_MAX, 3) == 2642245ULL);
  CHECK(iroot(UINT64_MAX, 64) == 1);
  CHECK(iroot(UINT64_MAX, 1) == UINT64_MAX);
  CHECK(exact_root(27, 3) == 3u);
  CHECK_FALSE(exact_root(28, 3).has_value());
  CHECK_FALSE(exact_root(0, 2).has_value());
  CHECK(iroot_bounded(1000, 3, 5) == 5);
  CHECK(checked_pow(10, 19) == 10000000000000000000ULL);
  CHECK_FALSE(checked_pow(10, 20).has_value());
  CHECK_FALSE(checked_pow(3, 5, 200).has_value());
  CHECK(checked_pow(3, 5, 243) == 243u);

  std::mt19937_64 rng(1);
  for (int i = 0; i < 20000; ++i) {
    const std::uint64_t v = rng() >> (rng() % 64);
    const unsigned k = 1 + rng() % 8;
    CHECK(iroot(v, k) == oracle::root_floor(v, k));
  }
}

TEST_CASE("rationals") {
  CHECK(Rational(6, 4) == Rational(3, 2));
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK(Rational(5, 2).to_string() == "5/2");
  CHECK(Rational(4, 2).to_string() == "2");
  CHECK(Rational::parse("31/30") == Rational(31, 30));
  CHECK(Rational::parse("-7") == Rational(-7));
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
  CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
  CHECK(Rational(2, 3) / Rational(4, 9) == Rational(3, 2));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(5, 4).to_double() == 1.25);
  CHECK_THROWS(Rational(1, 0));
  CHECK_THROWS(Rational(1) / Rational(0));
  CHECK_THROWS(Rational::parse("1/"));
  CHECK_THROWS_AS(Rational(INT64_MAX) * Rational(2), std::overflow_error);
}

TEST_CASE("expressions") {
  ExpressionScope scope{{"s", Rational(6)}, {"k", Rational(2)}, {"terms", Rational(5)}};
  CHECK(evaluate_expression("(s - 1)/k", scope) == Rational(5, 2));
  CHECK(evaluate_expression("1 + 3/(2*k)", scope) == Rational(7, 4));
  CHECK(evaluate_expression("2^k", scope) == Rational(4));
  CHECK(evaluate_expression("2^k^2", scope) == Rational(16));  // right associative
  CHECK(evaluate_expression("s - 1 > 2^k", scope) == Rational(1));
  CHECK(evaluate_expression("s == 4 && (k == 2 || k == 3)", scope) == Rational(0));
  CHECK(evaluate_expression("!(s <= 5) && s >= 6 && k != 3", scope) == Rational(1));
  CHECK(evaluate_expression("-k + 3", scope) == Rational(1));
  CHECK(evaluate_expression("terms / k - 1", scope) == Rational(3, 2));
  CHECK_THROWS_AS(evaluate_expression("q + 1", scope), ExpressionError);
  CHECK_THROWS_AS(evaluate_expression("(s", scope), ExpressionError);
  CHECK_THROWS_AS(evaluate_expression("2^(1/2)", scope), ExpressionError);
  CHECK_THROWS_AS(evaluate_expression("s s", scope), ExpressionError);
  CHECK_THROWS(evaluate_expression("1/(k-2)", scope));
}

TEST_CASE("grids") {
  CHECK(parse_grid("1024:65536:2") ==
        std::vector<std::uint64_t>{1024, 2048, 4096, 8192, 16384, 32768, 65536});
  CHECK(parse_grid("100:100000000:10").size() == 7);
  CHECK(parse_grid("10:99:10") == std::vector<std::uint64_t>{10});
  CHECK(parse_grid("10, 25,100") == std::vector<std::uint64_t>{10, 25, 100});
  CHECK(parse_grid("7") == std::vector<std::uint64_t>{7});
  CHECK_THROWS_AS(parse_grid("10:5:2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("1:10:1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("0:10:2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("5,3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("5,5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("a:b:c"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("1:2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("0"), std::invalid_argument);
}
