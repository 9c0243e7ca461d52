#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "equidist/error.hpp"
#include "equidist/measure.hpp"

using namespace equidist;

namespace {

// Product of digit weights, most significant digit first.
double product_oracle(const std::vector<double>& w, unsigned level, std::uint64_t index) {
  const auto q = static_cast<std::uint64_t>(w.size());
  double p = 1.0;
  std::vector<unsigned> digits(level);
  for (unsigned i = 0; i < level; ++i) {
    digits[level - 1 - i] = static_cast<unsigned>(index % q);
    index /= q;
  }
  for (const auto d : digits) p *= w[d];
  return p;
}

}  // namespace

TEST_CASE("q-adic cells") {
  const auto c = QadicCell::make(3, 2, 5);
  CHECK(c.count() == 9);
  CHECK(c.left() == doctest::Approx(5.0 / 9));
  CHECK(c.right() == doctest::Approx(6.0 / 9));
  CHECK(c.digits() == std::vector<unsigned>{1, 2});
  CHECK(c.contains(5.5 / 9));
  CHECK(QadicCell::make(2, 2, 1).contains(0.25));
  CHECK_FALSE(QadicCell::make(2, 2, 1).contains(0.5));
  CHECK(QadicCell::make(2, 3, 7).contains(1.0));
  CHECK_THROWS_AS(QadicCell::make(2, 3, 8), Error);
  CHECK_THROWS_AS(QadicCell::make(1, 3, 0), Error);
}

TEST_CASE("cell masses match the digit product") {
  const std::vector<double> bin{0.3, 0.7}, tri{0.2, 0.5, 0.3};
  for (unsigned n = 0; n <= 8; ++n) {
    for (std::uint64_t j = 0; j < (std::uint64_t{1} << n); ++j) {
      CHECK(cell_measure(Measure::binomial(0.3), QadicCell::make(2, n, j)) == doctest::Approx(product_oracle(bin, n, j)).epsilon(1e-15));
    }
  }
  for (unsigned n = 0; n <= 5; ++n) {
    for (std::uint64_t j = 0; j < static_cast<std::uint64_t>(std::pow(3, n)); ++j) {
      CHECK(cell_measure(Measure::multinomial(tri), QadicCell::make(3, n, j)) == doctest::Approx(product_oracle(tri, n, j)).epsilon(1e-15));
    }
  }
  CHECK(cell_measure(Measure::uniform(), QadicCell::make(5, 3, 17)) == doctest::Approx(1.0 / 125));
  CHECK(cell_measure(Measure::cantor(), QadicCell::make(3, 2, 4)) == 0.0);
  CHECK(cell_measure(Measure::cantor(), QadicCell::make(3, 2, 8)) == 0.25);
}

TEST_CASE("base mismatch is rejected") {
  try {
    (void)cell_measure(Measure::binomial(0.3), QadicCell::make(3, 1, 0));
    FAIL("expected incompatible cell");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IncompatibleCell);
  }
  CHECK(Measure::uniform().accepts_base(7));
  CHECK_FALSE(Measure::cantor().accepts_base(2));
}

TEST_CASE("two-weight multinomial is the binomial measure") {
  const auto a = Measure::multinomial({0.3, 0.7});
  const auto b = Measure::binomial(0.3);
  for (unsigned n = 1; n <= 10; ++n) {
    for (std::uint64_t j = 0; j < (std::uint64_t{1} << n); j += 37) {
      CHECK(cell_measure(a, QadicCell::make(2, n, j)) == doctest::Approx(cell_measure(b, QadicCell::make(2, n, j))).epsilon(1e-15));
    }
  }
  for (double x = 0.0; x <= 1.0; x += 0.0625) CHECK(cdf(a, x) == doctest::Approx(cdf(b, x)).epsilon(1e-14));
}

TEST_CASE("invalid measures") {
  CHECK_THROWS_AS(Measure::binomial(0.0), Error);
  CHECK_THROWS_AS(Measure::binomial(1.5), Error);
  CHECK_THROWS_AS(Measure::multinomial({0.2, 0.2}), Error);
  CHECK_THROWS_AS(Measure::multinomial({0.5}), Error);
}

TEST_CASE("closed-form CDF values") {
  const double r = 0.3;
  const auto m = Measure::binomial(r);
  CHECK(cdf(m, 0.0) == 0.0);
  CHECK(cdf(m, 1.0) == 1.0);
  CHECK(cdf(m, 0.5) == doctest::Approx(r).epsilon(1e-15));
  CHECK(cdf(m, 0.25) == doctest::Approx(r * r).epsilon(1e-15));
  CHECK(cdf(m, 0.75) == doctest::Approx(r + (1 - r) * r).epsilon(1e-15));
  for (double x = 0.0; x <= 1.0; x += 0.01) CHECK(cdf(Measure::uniform(), x) == doctest::Approx(x).epsilon(1e-14));
  const auto c = Measure::cantor();
  CHECK(cdf(c, 1.0 / 3) == doctest::Approx(0.5));
  CHECK(cdf(c, 0.5) == doctest::Approx(0.5));
  CHECK(cdf(c, 2.0 / 3) == doctest::Approx(0.5));
  CHECK(cdf(c, 0.25) == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(cdf(c, 0.75) == doctest::Approx(2.0 / 3).epsilon(1e-12));
}

TEST_CASE("CDF and quantile are monotone") {
  for (const auto& m : {Measure::binomial(0.1), Measure::multinomial({0.2, 0.5, 0.3}), Measure::cantor()}) {
    double prev_f = 0.0, prev_q = 0.0;
    for (int i = 0; i <= 2000; ++i) {
      const double t = i / 2000.0;
      const double f = cdf(m, t);
      const double q = quantile(m, t);
      CHECK(f >= prev_f);
      CHECK(q >= prev_q);
      prev_f = f;
      prev_q = q;
    }
  }
}

TEST_CASE("quantile picks the left-most preimage") {
  CHECK(quantile(Measure::binomial(0.3), 0.3) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(quantile(Measure::cantor(), 0.5) == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(quantile(Measure::uniform(), 0.37) == doctest::Approx(0.37).epsilon(1e-14));
  CHECK(quantile(Measure::binomial(0.3), 0.0) == 0.0);
  CHECK(quantile(Measure::binomial(0.3), 1.0) == 1.0);
}

TEST_CASE("interval measure and continuity") {
  const auto m = Measure::binomial(0.3);
  CHECK(interval_measure(m, 0.0, 0.5) == doctest::Approx(0.3));
  CHECK(interval_measure(m, 0.5, 1.0) == doctest::Approx(0.7));
  CHECK(point_mass(m, 0.5) == 0.0);
  CHECK(is_continuity_interval(m, 0.25, 0.5));
  CHECK(interval_measure(Measure::cantor(), 1.0 / 3, 2.0 / 3) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(interval_measure(m, 0.6, 0.4), Error);
}
