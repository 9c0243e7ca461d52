#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "equidist/generator.hpp"
#include "equidist/measure.hpp"
#include "equidist/riemann.hpp"

namespace equidist {

/// Index sequence {k_n}, n = 1, 2, ...
class IndexSequence {
 public:
  enum class Kind { Identity, Shifted, Explicit };

  static IndexSequence identity();
  static IndexSequence shifted(std::uint64_t offset);
  /// The declared u.d. status of a list is metadata and never checked.
  static IndexSequence explicit_list(std::vector<std::uint64_t> values, bool declared_ud = false);

  Kind kind() const noexcept { return kind_; }
  std::uint64_t offset() const noexcept { return offset_; }
  bool declared_ud() const noexcept { return declared_ud_; }
  /// Length for explicit lists.
  std::optional<std::uint64_t> size() const;

  std::uint64_t at(std::uint64_t n) const;  ///< n >= 1
  std::string describe() const;

 private:
  Kind kind_ = Kind::Identity;
  std::uint64_t offset_ = 0;
  bool declared_ud_ = true;
  std::vector<std::uint64_t> values_;
};

/// Interval with an optional closed right end.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  bool closed_hi = false;

  /// [lo, hi), or [lo, 1] when hi == 1.
  static Interval make(double lo, double hi);
  bool contains(double x) const;
  std::string str() const;
};

/// (1/N) |sum_{n=1..N} exp(2 pi i h x(k_n))|, h >= 1.
double weyl_sum(const Generator& g, const IndexSequence& idx, unsigned h, std::uint64_t count);

/// Exact star discrepancy D*_N of a point set in [0,1].
double star_discrepancy(std::span<const double> points);

/// sup |F_emp - F_m| over the sample points and their left limits.
double ks_distance(std::span<const double> points, const Measure& m);

struct IntervalCheck {
  Interval interval;
  std::string index;
  std::uint64_t count = 0;
  double empirical = 0.0;
  double target = 0.0;
  double gap = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

IntervalCheck interval_density_check(const Generator& g, const IndexSequence& idx, const Interval& interval,
                                     double target, std::uint64_t count, double tolerance);

struct Corollary1Report {
  std::vector<IntervalCheck> runs;
  bool pass = false;
};

/// Identity, Shifted(5) and Shifted(17).
std::vector<IndexSequence> default_index_battery();

/// Density of {n <= N : x(k_n) in S} against pi(S) for every index sequence
/// in the battery.
Corollary1Report corollary1_suite(const Interval& set, double target, const Generator& g,
                                  const std::vector<IndexSequence>& battery, std::uint64_t count,
                                  double tolerance);

struct AverageReport {
  std::uint64_t count = 0;
  double average = 0.0;
  std::optional<double> integral;
  std::optional<double> gap;
};

/// Cesaro average (1/N) sum_{n=1..N} f(x(k_n)) paired with the exact integral.
AverageReport theorem3_average(const Generator& g, const IndexSequence& idx, const BoundedFunction& f,
                               std::uint64_t count);

struct RunningStat {
  std::uint64_t n = 0;
  double star_discrepancy = 0.0;
  double weyl_1 = 0.0;
  std::optional<double> ks;
};

struct DiscrepancyReport {
  std::uint64_t count = 0;
  double star_discrepancy = 0.0;
  std::vector<std::pair<unsigned, double>> weyl;  ///< h -> magnitude
  std::optional<double> ks_distance;
  std::vector<IntervalCheck> interval_checks;
  std::vector<RunningStat> running;  ///< at powers of two up to count
};

struct DiscrepancyOptions {
  std::uint64_t count = 1024;
  unsigned h_max = 8;
  std::optional<Measure> target;
  std::vector<Interval> intervals;
  double tolerance = 1e-2;
  bool running = false;
};

DiscrepancyReport discrepancy_report(const Generator& g, const IndexSequence& idx, const DiscrepancyOptions& opts);

/// x(k_1), ..., x(k_N).
std::vector<double> sample(const Generator& g, const IndexSequence& idx, std::uint64_t count);

}  // namespace equidist
