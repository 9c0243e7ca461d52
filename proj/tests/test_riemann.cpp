#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "equidist/error.hpp"
#include "equidist/riemann.hpp"

using namespace equidist;

TEST_CASE("affine envelopes match the closed form") {
  for (unsigned n = 0; n <= 12; ++n) {
    const auto e = envelope_integrals(BoundedFunction::affine(), Domain::Rationals, n);
    const double h = std::ldexp(1.0, -static_cast<int>(n));
    CHECK(e.lower == doctest::Approx((1.0 - h) / 2).epsilon(1e-14));
    CHECK(e.upper == doctest::Approx((1.0 + h) / 2).epsilon(1e-14));
    CHECK_FALSE(e.approximate);
  }
}

TEST_CASE("step envelopes count the straddling cell") {
  const auto f = BoundedFunction::step({Rational(1, 3)}, {0.0, 1.0});
  for (unsigned n = 1; n <= 14; ++n) {
    const std::uint64_t cells = std::uint64_t{1} << n;
    const std::uint64_t first_inside = (cells + 2) / 3;  // ceil(cells/3)
    const std::uint64_t first_touching = cells / 3;
    const auto e = envelope_integrals(f, Domain::FullInterval, n);
    CHECK(e.lower == doctest::Approx(static_cast<double>(cells - first_inside) / cells));
    CHECK(e.upper == doctest::Approx(static_cast<double>(cells - first_touching) / cells));
  }
  CHECK(f(Rational(1, 3).to_double()) == 0.0);
  CHECK(f(Point{Rational(1, 3).to_double(), Rational(1, 3)}) == 1.0);
  CHECK(*f.exact_integral() == doctest::Approx(2.0 / 3));
}

TEST_CASE("dyadic indicator envelopes depend on the domain") {
  const auto f = BoundedFunction::dyadic_indicator();
  for (unsigned n : {0U, 3U, 9U}) {
    const auto full = envelope_integrals(f, Domain::FullInterval, n);
    CHECK(full.lower == 0.0);
    CHECK(full.upper == 1.0);
    const auto rat = envelope_integrals(f, Domain::Rationals, n);
    CHECK(rat.gap() == 1.0);
    const auto dy = envelope_integrals(f, Domain::DyadicRationals, n);
    CHECK(dy.lower == 1.0);
    CHECK(dy.upper == 1.0);
  }
  CHECK_FALSE(f.exact_integral());
}

TEST_CASE("canned integrability verdicts") {
  const auto a = integrability_verdict(BoundedFunction::affine(), Domain::Rationals, 1e-6, 24);
  CHECK(a.verdict == Integrability::Integrable);
  CHECK(*a.value == doctest::Approx(0.5).epsilon(1e-9));
  const auto s = integrability_verdict(BoundedFunction::step({Rational(1, 3)}, {0.0, 1.0}), Domain::Rationals, 1e-6, 24);
  CHECK(s.verdict == Integrability::Integrable);
  CHECK(*s.value == doctest::Approx(2.0 / 3).epsilon(1e-6));
  const auto d = integrability_verdict(BoundedFunction::dyadic_indicator(), Domain::Rationals, 1e-6, 12);
  CHECK(d.verdict == Integrability::NotIntegrable);
  CHECK(d.gap == 1.0);
  CHECK_FALSE(d.value);
  const auto dd = integrability_verdict(BoundedFunction::dyadic_indicator(), Domain::DyadicRationals, 1e-6, 12);
  CHECK(dd.verdict == Integrability::Integrable);
  CHECK(*dd.value == 1.0);
  const auto i = integrability_verdict(BoundedFunction::interval_indicator(Rational(1, 4), Rational(3, 4)),
                                       Domain::FullInterval, 1e-6, 24);
  CHECK(*i.value == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(std::string(to_string(Integrability::NotIntegrable)) == "NOT-INTEGRABLE");
}

TEST_CASE("sampled envelopes are marked approximate") {
  const auto f = BoundedFunction::custom([](double x) { return x * x; }, 1.0, "square");
  const auto e = envelope_integrals(f, Domain::FullInterval, 8);
  CHECK(e.approximate);
  CHECK(e.lower <= 1.0 / 3);
  CHECK(e.upper >= 1.0 / 3);
  const auto unbounded = BoundedFunction::custom([](double x) { return x; }, std::nullopt);
  CHECK_THROWS_AS(envelope_integrals(unbounded, Domain::FullInterval, 3), Error);
}

TEST_CASE("domain picks use the least denominator") {
  CHECK(*domain_pick(Domain::Rationals, Rational(1, 3), Rational(1, 2)).exact == Rational(2, 5));
  CHECK(*domain_pick(Domain::DyadicRationals, Rational(1, 3), Rational(1, 2)).exact == Rational(3, 8));
  CHECK(domain_contains(Domain::DyadicRationals, Point{0.25, Rational(1, 4)}));
  CHECK_FALSE(domain_contains(Domain::DyadicRationals, Point{1.0 / 3, Rational(1, 3)}));
  CHECK(domain_from_string("dyadic") == Domain::DyadicRationals);
  CHECK_THROWS_AS(domain_from_string("reals"), Error);
}

TEST_CASE("witnesses land in the cell near the envelope") {
  const auto f = BoundedFunction::dyadic_indicator();
  for (unsigned level : {1U, 5U, 11U}) {
    for (std::uint64_t j = 0; j < (std::uint64_t{1} << level); j += 3) {
      const double lo = std::ldexp(static_cast<double>(j), -static_cast<int>(level));
      const double hi = std::ldexp(static_cast<double>(j + 1), -static_cast<int>(level));
      const Point up = f.witness(Domain::Rationals, level, j, true, 1e-3);
      const Point down = f.witness(Domain::Rationals, level, j, false, 1e-3);
      CHECK(up.value >= lo);
      CHECK(up.value <= hi);
      CHECK(down.value >= lo);
      CHECK(down.value <= hi);
      CHECK(f(up) == 1.0);
      CHECK(f(down) == 0.0);
      CHECK(domain_contains(Domain::Rationals, down));
    }
  }
}

TEST_CASE("adversarial level") {
  CHECK(adversarial_level(1) == 1);
  CHECK(adversarial_level(2) == 2);
  CHECK(adversarial_level(3) == 2);
  CHECK(adversarial_level(4) == 3);
  CHECK(adversarial_level(1023) == 10);
}

TEST_CASE("adversarial sequence stays near the base sequence") {
  const auto base = Generator::radical_inverse(2);
  const auto schedule = BlockSchedule::factorial(7);
  const auto f = BoundedFunction::dyadic_indicator();
  const auto adv = adversarial_sequence(f, Domain::Rationals, base, schedule);
  for (std::uint64_t n = 1; n <= schedule.end(7); ++n) {
    const double width = std::ldexp(1.0, -static_cast<int>(adversarial_level(n)));
    const Point p = adv.combined.point(n);
    REQUIRE(std::fabs(p.value - base(n)) <= width);
    REQUIRE(f(p) == (schedule.uses_first(n) ? 1.0 : 0.0));
  }
  try {
    (void)adversarial_sequence(BoundedFunction::affine(), Domain::Rationals, base, schedule);
    FAIL("expected precondition");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Precondition);
  }
}

TEST_CASE("Cesaro trace") {
  const auto trace = cesaro_trace(BoundedFunction::constant(0.7), Generator::radical_inverse(2), {1, 10, 100});
  REQUIRE(trace.size() == 3);
  for (const auto& [n, avg] : trace) CHECK(avg == doctest::Approx(0.7));
  const auto t = cesaro_trace(BoundedFunction::affine(), Generator::radical_inverse(2), {4});
  CHECK(t[0].second == doctest::Approx((0.5 + 0.25 + 0.75 + 0.125) / 4));
}
