#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <limits>

#include "equidist/error.hpp"
#include "equidist/numeric.hpp"
#include "equidist/rational.hpp"

using namespace equidist;

TEST_CASE("rational normalizes and prints p/q") {
  CHECK(Rational(2, 4).str() == "1/2");
  CHECK(Rational(3, -6).str() == "-1/2");
  CHECK(Rational(0, 7).str() == "0/1");
  CHECK(Rational(5).str() == "5/1");
  CHECK_THROWS_AS(Rational(1, 0), Error);
}

TEST_CASE("rational arithmetic") {
  const Rational a(1, 3), b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == Rational(1, 6));
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2));
  CHECK(-a == Rational(-1, 3));
  CHECK(b < a);
  CHECK(Rational(1, 4).is_dyadic());
  CHECK_FALSE(Rational(1, 3).is_dyadic());
  CHECK(Rational(4, 2).is_integer());
}

TEST_CASE("rational parse") {
  CHECK(Rational::parse("3/9") == Rational(1, 3));
  CHECK(Rational::parse("-7") == Rational(-7));
  CHECK(Rational::parse("0.125") == Rational(1, 8));
  CHECK(Rational::parse("0.3") == Rational(3, 10));
  CHECK_THROWS_AS(Rational::parse("1/"), Error);
  CHECK_THROWS_AS(Rational::parse("abc"), Error);
  CHECK_THROWS_AS(Rational::parse("1/0"), Error);
}

TEST_CASE("rational overflow is reported") {
  const Rational big(std::numeric_limits<std::int64_t>::max() - 1, 1);
  try {
    (void)(big * big);
    FAIL("expected overflow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Overflow);
  }
  CHECK(Rational(std::int64_t{1} << 40, 3) * Rational(3, std::int64_t{1} << 40) == Rational(1));
}

TEST_CASE("numeric helpers") {
  CHECK(ipow(3, 4) == 81);
  CHECK_THROWS_AS(ipow(10, 20), Error);
  CHECK(checked_pow(2, 62) == (std::uint64_t{1} << 62));
  CHECK(checked_pow(2, 64) == 0);
  CHECK(gcd_u64(12, 18) == 6);
  CHECK(round15(0.1 + 0.2) == 0.3);
  CompensatedSum<double> s;
  for (int i = 0; i < 10; ++i) s.add(0.1);
  CHECK(s.value() == 1.0);
}
