#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "equidist/construction.hpp"
#include "equidist/error.hpp"
#include "equidist/harness.hpp"

using namespace equidist;

namespace {

// sup over anchors t of |#{x < t}/N - t| and |#{x <= t}/N - t|, quadratic time.
double star_oracle(const std::vector<double>& pts) {
  const double n = static_cast<double>(pts.size());
  double worst = 0.0;
  std::vector<double> anchors = pts;
  anchors.push_back(1.0);
  for (const double t : anchors) {
    double below = 0, upto = 0;
    for (const double x : pts) {
      below += x < t ? 1 : 0;
      upto += x <= t ? 1 : 0;
    }
    worst = std::max({worst, std::fabs(below / n - t), std::fabs(upto / n - t)});
  }
  return worst;
}

double weyl_oracle(const Generator& g, unsigned h, std::uint64_t n) {
  std::complex<long double> s = 0;
  for (std::uint64_t k = 1; k <= n; ++k) {
    const long double phase = 2 * std::numbers::pi_v<long double> * h * static_cast<long double>(g(k));
    s += std::polar(1.0L, phase);
  }
  return static_cast<double>(std::abs(s) / static_cast<long double>(n));
}

}  // namespace

TEST_CASE("index sequences") {
  CHECK(IndexSequence::identity().at(7) == 7);
  CHECK(IndexSequence::shifted(5).at(1) == 6);
  CHECK(IndexSequence::shifted(5).describe() == "shift:5");
  const auto l = IndexSequence::explicit_list({3, 1, 4});
  CHECK(l.at(3) == 4);
  CHECK(*l.size() == 3);
  CHECK_THROWS_AS(l.at(4), Error);
  CHECK_THROWS_AS(IndexSequence::identity().at(0), Error);
}

TEST_CASE("intervals") {
  const auto a = Interval::make(0.25, 0.5);
  CHECK(a.contains(0.25));
  CHECK_FALSE(a.contains(0.5));
  const auto b = Interval::make(0.5, 1.0);
  CHECK(b.closed_hi);
  CHECK(b.contains(1.0));
  CHECK(a.str() == "[0.25,0.5)");
  CHECK_THROWS_AS(Interval::make(0.6, 0.5), Error);
}

TEST_CASE("star discrepancy against the anchor oracle") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> pts(1 + rng() % 60);
    for (auto& p : pts) p = u(rng);
    if (trial % 3 == 0) pts[0] = pts.back();
    CHECK(star_discrepancy(pts) == doctest::Approx(star_oracle(pts)).epsilon(1e-12));
    auto shuffled = pts;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(star_discrepancy(shuffled) == star_discrepancy(pts));
  }
  CHECK(star_discrepancy(std::vector<double>{0.5}) == 0.5);
}

TEST_CASE("radical inverse discrepancy at powers of two") {
  const auto pts = sample(Generator::radical_inverse(2), IndexSequence::identity(), 1 << 12);
  for (unsigned k = 1; k <= 12; ++k) {
    const std::uint64_t n = std::uint64_t{1} << k;
    CHECK(n * star_discrepancy(std::span(pts).first(n)) == doctest::Approx(1.0));
  }
}

TEST_CASE("KS distance to the uniform measure is the star discrepancy") {
  const auto pts = sample(Generator::kronecker(std::sqrt(2.0L), "sqrt2"), IndexSequence::identity(), 500);
  CHECK(ks_distance(pts, Measure::uniform()) == doctest::Approx(star_discrepancy(pts)).epsilon(1e-12));
}

TEST_CASE("transported radical inverse has KS distance 2^-k") {
  const auto m = Measure::binomial(0.3);
  const auto y = transport_mapping(Generator::radical_inverse(2), m);
  const auto pts = sample(y, IndexSequence::identity(), 1 << 14);
  for (unsigned k = 6; k <= 14; ++k) {
    const double ks = ks_distance(std::span(pts).first(std::size_t{1} << k), m);
    CHECK(ks == doctest::Approx(std::ldexp(1.0, -static_cast<int>(k))).epsilon(1e-7));
  }
}

TEST_CASE("Weyl sums against a direct complex sum") {
  const auto r = Generator::radical_inverse(2);
  const auto kr = Generator::kronecker(std::sqrt(2.0L), "sqrt2");
  for (unsigned h = 1; h <= 4; ++h) {
    CHECK(weyl_sum(r, IndexSequence::identity(), h, 1000) == doctest::Approx(weyl_oracle(r, h, 1000)).epsilon(1e-10));
    CHECK(weyl_sum(kr, IndexSequence::identity(), h, 1000) == doctest::Approx(weyl_oracle(kr, h, 1000)).epsilon(1e-10));
  }
  // Frozen: radical inverse, h = 1, N = 2^16 gives 7.3e-10 from weyl_oracle.
  CHECK(weyl_sum(r, IndexSequence::identity(), 1, 1 << 16) < 1e-8);
  CHECK_THROWS_AS(weyl_sum(r, IndexSequence::identity(), 0, 10), Error);
}

TEST_CASE("Cesaro average of t along the radical inverse") {
  const std::uint64_t n = 1 << 16;
  const auto avg = theorem3_average(Generator::radical_inverse(2), IndexSequence::identity(), BoundedFunction::affine(), n);
  const double exact = ((n - 1) / 2.0 + std::ldexp(1.0, -17)) / n;  // x(0..n-1) sums to (n-1)/2, drop x(0), add x(n)
  CHECK(avg.average == doctest::Approx(exact).epsilon(1e-14));
  CHECK(*avg.integral == 0.5);
  CHECK(*avg.gap < 1e-5);
}

TEST_CASE("interval density along index sequences") {
  const auto kr = Generator::kronecker(std::sqrt(2.0L), "sqrt2");
  const auto c = interval_density_check(kr, IndexSequence::identity(), Interval::make(0.0, 0.25), 0.25, 100000, 1e-3);
  CHECK(c.pass);
  CHECK(c.empirical == doctest::Approx(0.25).epsilon(1e-3));

  const auto ok = corollary1_suite(Interval::make(0.25, 0.5), 0.25, Generator::radical_inverse(2), default_index_battery(), 4096, 1e-2);
  CHECK(ok.pass);
  CHECK(ok.runs.size() == 3);
  const auto bad = corollary1_suite(Interval::make(0.25, 0.5), 0.25, Generator::constant(0.1), default_index_battery(), 4096, 1e-2);
  CHECK_FALSE(bad.pass);
}

TEST_CASE("discrepancy report with running statistics") {
  DiscrepancyOptions opts;
  opts.count = 1024;
  opts.h_max = 3;
  opts.target = Measure::uniform();
  opts.intervals = {Interval::make(0.0, 0.5)};
  opts.running = true;
  const auto r = discrepancy_report(Generator::radical_inverse(2), IndexSequence::identity(), opts);
  CHECK(r.count == 1024);
  CHECK(r.weyl.size() == 3);
  CHECK(r.star_discrepancy == doctest::Approx(1.0 / 1024));
  REQUIRE(r.running.size() == 11);
  CHECK(r.running.back().n == 1024);
  CHECK(r.interval_checks.front().pass);
}
