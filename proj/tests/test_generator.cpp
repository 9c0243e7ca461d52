#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "equidist/error.hpp"
#include "equidist/generator.hpp"
#include "equidist/measure.hpp"

using namespace equidist;

namespace {

struct Reversed {
  std::uint64_t num;
  std::uint64_t den;
};

Reversed reverse_digits(std::uint64_t k, unsigned q) {
  Reversed r{0, 1};
  while (k > 0) {
    r.num = r.num * q + k % q;
    r.den *= q;
    k /= q;
  }
  return r;
}

}  // namespace

TEST_CASE("radical inverse matches digit reversal") {
  for (const unsigned q : {2U, 3U, 5U, 10U}) {
    const auto g = Generator::radical_inverse(q);
    for (std::uint64_t k = 0; k < (1U << 16); ++k) {
      const auto r = reverse_digits(k, q);
      const Rational exact(static_cast<std::int64_t>(r.num), static_cast<std::int64_t>(r.den));
      REQUIRE(radical_inverse_exact(k, q) == exact);
      REQUIRE(g(k) == exact.to_double());
    }
  }
  const auto g = Generator::radical_inverse(2);
  CHECK(g(1) == 0.5);
  CHECK(g(6) == 0.375);
  CHECK(g.point(6).exact == Rational(3, 8));
  CHECK_THROWS_AS(Generator::radical_inverse(1), Error);
}

TEST_CASE("Kronecker sequence") {
  const auto g = Generator::kronecker(std::sqrt(2.0L), "sqrt2");
  for (std::uint64_t k = 0; k < 1000; ++k) {
    const long double v = static_cast<long double>(k) * std::sqrt(2.0L);
    CHECK(g(k) == doctest::Approx(static_cast<double>(v - std::floor(v))).epsilon(1e-15));
  }
  CHECK(g.label() == "sqrt2");
  CHECK_FALSE(g.point(3).exact.has_value());
}

TEST_CASE("Cantor code") {
  CHECK(cantor_code_value(0.0) == 0.0);
  CHECK(cantor_code_value(0.5) == doctest::Approx(2.0 / 3));
  CHECK(cantor_code_value(0.25) == doctest::Approx(2.0 / 9));
  CHECK(cantor_code_value(0.75) == doctest::Approx(8.0 / 9));
  CHECK(cantor_code_value(1.0) == 1.0);
  CHECK(*cantor_code_exact(Rational(3, 8)) == Rational(8, 27));
  const auto g = Generator::cantor_code(Generator::radical_inverse(2));
  CHECK(g.point(3).exact == Rational(8, 9));
}

TEST_CASE("transport through the quantile") {
  const auto m = Measure::binomial(0.3);
  const auto g = Generator::transport(Generator::radical_inverse(2), m);
  for (std::uint64_t k = 0; k < 256; ++k) CHECK(g(k) == quantile(m, radical_inverse(k, 2)));
  CHECK(g(1) == doctest::Approx(quantile(m, 0.5)));
}

TEST_CASE("factorial block schedule") {
  const auto s = BlockSchedule::factorial(8);
  CHECK(s.length(1) == 1);
  CHECK(s.length(4) == 24);
  CHECK(s.end(3) == 9);
  CHECK(s.end(8) == 46233);
  CHECK(s.block_of(1) == 1);
  CHECK(s.block_of(2) == 2);
  CHECK(s.block_of(3) == 2);
  CHECK(s.block_of(4) == 3);
  CHECK(s.block_of(9) == 3);
  CHECK(s.block_of(10) == 4);
  CHECK(s.uses_first(5));
  CHECK_FALSE(s.uses_first(33));
  CHECK(s.block_of(46234) == 8);
}

TEST_CASE("interleaved generator switches on block parity") {
  const auto g = Generator::interleaved(Generator::constant(1.0), Generator::constant(0.0), BlockSchedule::factorial(6));
  CHECK(g(0) == 1.0);
  CHECK(g(1) == 1.0);
  CHECK(g(2) == 0.0);
  CHECK(g(3) == 0.0);
  CHECK(g(4) == 1.0);
  CHECK(g(9) == 1.0);
  CHECK(g(10) == 0.0);
}

TEST_CASE("constant generator validates its value") {
  CHECK(Generator::constant(0.25)(99) == 0.25);
  CHECK_THROWS_AS(Generator::constant(1.5), Error);
}
