#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "equidist/construction.hpp"
#include "equidist/density.hpp"
#include "equidist/error.hpp"
#include "equidist/numeric.hpp"

using namespace equidist;

TEST_CASE("digit reversal") {
  CHECK(digit_reverse(6, 2, 3) == 3);
  CHECK(digit_reverse(1, 2, 4) == 8);
  CHECK(digit_reverse(5, 3, 2) == 7);
  CHECK(digit_reverse(0, 10, 5) == 0);
}

TEST_CASE("residue decomposition passes every level") {
  const auto d2 = residue_decomposition(2, 10);
  const auto r2 = verify_decomposition(d2, 1 << 12);
  CHECK(r2.pass());
  CHECK(r2.levels.size() == 10);
  const auto d3 = residue_decomposition(3, 6);
  CHECK(verify_decomposition(d3, ipow(3, 7)).pass());
  CHECK(d2.cell(3, 1).modulus() == 8);
  CHECK(d2.cell(3, 1).residue() == 4);
  CHECK(d2.cell_of(3, 12) == 1);
  CHECK_THROWS_AS(verify_decomposition(d2, 100), Error);
}

TEST_CASE("identity labelling partitions but does not refine") {
  const NestedDecomposition d(2, 6, [](unsigned, std::uint64_t j) { return j; });
  const auto r = verify_decomposition(d, 1 << 8);
  CHECK_FALSE(r.pass());
  CHECK(r.levels.front().partition);
  CHECK_FALSE(r.levels.back().refinement);
}

TEST_CASE("a labelling that repeats a residue fails the partition check") {
  const NestedDecomposition d(2, 4, [](unsigned, std::uint64_t) { return std::uint64_t{0}; });
  const auto r = verify_decomposition(d, 1 << 6);
  CHECK_FALSE(r.pass());
  CHECK_FALSE(r.levels.front().partition);
}

TEST_CASE("canonical mapping is the radical inverse") {
  for (const unsigned q : {2U, 3U}) {
    const auto x = theorem1_mapping(residue_decomposition(q, 10));
    const auto ref = Generator::radical_inverse(q);
    for (std::uint64_t k = 0; k < 20000; ++k) REQUIRE(x(k) == ref(k));
  }
}

TEST_CASE("mirrored labelling resolves to the left end of the deepest cell") {
  const unsigned q = 2, depth = 8;
  const std::uint64_t cells = 1 << depth;
  const NestedDecomposition d(q, depth, [&](unsigned n, std::uint64_t j) {
    return digit_reverse((std::uint64_t{1} << n) - 1 - j, q, n);
  });
  REQUIRE(verify_decomposition(d, 1 << 10).pass());
  const auto x = theorem1_mapping(d);
  for (std::uint64_t k = 0; k < 4096; ++k) {
    const std::uint64_t j = cells - 1 - digit_reverse(k % cells, q, depth);
    REQUIRE(x(k) == static_cast<double>(j) / cells);
  }
}

TEST_CASE("preimages of dyadic cells are residue classes") {
  const auto g = Generator::radical_inverse(2);
  for (unsigned n = 0; n <= 6; ++n) {
    for (std::uint64_t j = 0; j < (std::uint64_t{1} << n); ++j) {
      const auto cell = QadicCell::make(2, n, j);
      const auto pre = preimage_of_cell(g, cell);
      CHECK(buck_density_exact(pre) == Rational(1, std::int64_t{1} << n));
      for (std::uint64_t k = 0; k < 4096; ++k) REQUIRE(pre.contains(k) == cell.contains(g(k)));
    }
  }
  CHECK_THROWS_AS(preimage_of_cell(Generator::kronecker(0.5L, "0.5"), QadicCell::make(2, 1, 0)), Error);
  CHECK_THROWS_AS(preimage_of_cell(g, QadicCell::make(3, 1, 0)), Error);
}

TEST_CASE("Darboux split reaches any rational fraction") {
  const auto whole = darboux_split(IntegerSet::ap(1, 0), 1, 3);
  CHECK(buck_density_exact(whole) == Rational(1, 3));
  const auto parent = IntegerSet::unite({IntegerSet::ap(4, 1), IntegerSet::ap(6, 0)});
  const auto part = darboux_split(parent, 2, 3);
  CHECK(buck_density_exact(part) == Rational(2, 3) * buck_density_exact(parent));
  for (std::uint64_t k = 0; k < 1000; ++k) {
    if (part.contains(k)) REQUIRE(parent.contains(k));
  }
  CHECK(buck_density_exact(darboux_split(IntegerSet::ap(3, 2), 0, 5)) == Rational(0));
  CHECK(buck_density_exact(darboux_split(IntegerSet::ap(2, 1), 0.375)) == Rational(3, 16));
  CHECK_THROWS_AS(darboux_split(IntegerSet::ap(2, 1), 0.3), Error);
  CHECK_THROWS_AS(darboux_split(IntegerSet::ap(2, 1), 4, 3), Error);
  CHECK_THROWS_AS(darboux_split(IntegerSet::unite({IntegerSet::ap(2, 0), IntegerSet::ap(3, 0)}), 1, 2), Error);
}

TEST_CASE("transport and Cantor mappings") {
  const auto t = transport_mapping(Generator::radical_inverse(2), Measure::binomial(0.3));
  CHECK(t(1) == doctest::Approx(quantile(Measure::binomial(0.3), 0.5)));
  const auto c = cantor_mapping(Generator::radical_inverse(2));
  CHECK(c(1) == doctest::Approx(2.0 / 3));
  CHECK(c(2) == doctest::Approx(2.0 / 9));
}
