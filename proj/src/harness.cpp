#include "equidist/harness.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <numbers>

#include "equidist/error.hpp"
#include "equidist/numeric.hpp"

namespace equidist {
namespace {

constexpr double kKsPrecision = 1e-12;

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

// Sorted-sample sup distance to a CDF, including left limits.
template <typename Cdf>
double sup_distance(std::span<const double> points, Cdf&& cdf) {
  require(!points.empty(), ErrorCode::InvalidArgument, "point set is empty");
  std::vector<double> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    worst = std::max({worst, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return std::clamp(worst, 0.0, 1.0);
}

}  // namespace

IndexSequence IndexSequence::identity() { return IndexSequence{}; }

IndexSequence IndexSequence::shifted(std::uint64_t offset) {
  IndexSequence s;
  s.kind_ = Kind::Shifted;
  s.offset_ = offset;
  return s;
}

IndexSequence IndexSequence::explicit_list(std::vector<std::uint64_t> values, bool declared_ud) {
  IndexSequence s;
  s.kind_ = Kind::Explicit;
  s.values_ = std::move(values);
  s.declared_ud_ = declared_ud;
  return s;
}

std::optional<std::uint64_t> IndexSequence::size() const {
  if (kind_ == Kind::Explicit) return values_.size();
  return std::nullopt;
}

std::uint64_t IndexSequence::at(std::uint64_t n) const {
  require(n >= 1, ErrorCode::InvalidArgument, "index sequences start at n = 1");
  switch (kind_) {
    case Kind::Identity: return n;
    case Kind::Shifted: return n + offset_;
    case Kind::Explicit:
      require(n <= values_.size(), ErrorCode::Precondition, "explicit index list exhausted");
      return values_[n - 1];
  }
  return n;
}

std::string IndexSequence::describe() const {
  switch (kind_) {
    case Kind::Identity: return "identity";
    case Kind::Shifted: return "shift:" + std::to_string(offset_);
    case Kind::Explicit: return "list[" + std::to_string(values_.size()) + "]";
  }
  return "?";
}

Interval Interval::make(double lo, double hi) {
  require(lo >= 0.0 && lo <= hi && hi <= 1.0, ErrorCode::InvalidArgument, "interval must satisfy 0 <= a <= b <= 1");
  return Interval{lo, hi, hi == 1.0};
}

bool Interval::contains(double x) const {
  return x >= lo && (x < hi || (closed_hi && x == hi));
}

std::string Interval::str() const {
  return "[" + format_real(lo) + "," + format_real(hi) + (closed_hi ? "]" : ")");
}

std::vector<double> sample(const Generator& g, const IndexSequence& idx, std::uint64_t count) {
  std::vector<double> out;
  out.reserve(count);
  for (std::uint64_t n = 1; n <= count; ++n) out.push_back(g(idx.at(n)));
  return out;
}

double weyl_sum(const Generator& g, const IndexSequence& idx, unsigned h, std::uint64_t count) {
  require(h >= 1, ErrorCode::InvalidArgument, "Weyl frequency must be at least 1");
  require(count >= 1, ErrorCode::InvalidArgument, "Weyl sum needs at least one point");
  CompensatedSum<long double> re;
  CompensatedSum<long double> im;
  for (std::uint64_t n = 1; n <= count; ++n) {
    const long double hx = static_cast<long double>(h) * g(idx.at(n));
    const long double phase = 2.0L * std::numbers::pi_v<long double> * (hx - std::floor(hx));
    re.add(std::cos(phase));
    im.add(std::sin(phase));
  }
  const long double mag = std::hypot(re.value(), im.value()) / static_cast<long double>(count);
  return std::min(1.0, static_cast<double>(mag));
}

double star_discrepancy(std::span<const double> points) {
  return sup_distance(points, [](double x) { return x; });
}

double ks_distance(std::span<const double> points, const Measure& m) {
  return sup_distance(points, [&m](double x) { return cdf(m, std::clamp(x, 0.0, 1.0), kKsPrecision); });
}

IntervalCheck interval_density_check(const Generator& g, const IndexSequence& idx, const Interval& interval,
                                     double target, std::uint64_t count, double tolerance) {
  require(count >= 1, ErrorCode::InvalidArgument, "density check needs at least one point");
  std::uint64_t hits = 0;
  for (std::uint64_t n = 1; n <= count; ++n) hits += interval.contains(g(idx.at(n))) ? 1 : 0;
  IntervalCheck c;
  c.interval = interval;
  c.index = idx.describe();
  c.count = count;
  c.empirical = static_cast<double>(hits) / static_cast<double>(count);
  c.target = target;
  c.gap = std::fabs(c.empirical - target);
  c.tolerance = tolerance;
  c.pass = c.gap <= tolerance;
  return c;
}

std::vector<IndexSequence> default_index_battery() {
  return {IndexSequence::identity(), IndexSequence::shifted(5), IndexSequence::shifted(17)};
}

Corollary1Report corollary1_suite(const Interval& set, double target, const Generator& g,
                                  const std::vector<IndexSequence>& battery, std::uint64_t count,
                                  double tolerance) {
  require(!battery.empty(), ErrorCode::InvalidArgument, "index battery is empty");
  Corollary1Report r;
  r.pass = true;
  for (const auto& idx : battery) {
    r.runs.push_back(interval_density_check(g, idx, set, target, count, tolerance));
    r.pass = r.pass && r.runs.back().pass;
  }
  return r;
}

AverageReport theorem3_average(const Generator& g, const IndexSequence& idx, const BoundedFunction& f,
                               std::uint64_t count) {
  require(count >= 1, ErrorCode::InvalidArgument, "average needs at least one point");
  CompensatedSum<double> sum;
  for (std::uint64_t n = 1; n <= count; ++n) sum.add(f(g.point(idx.at(n))));
  AverageReport r;
  r.count = count;
  r.average = sum.value() / static_cast<double>(count);
  r.integral = f.exact_integral();
  if (r.integral) r.gap = std::fabs(r.average - *r.integral);
  return r;
}

DiscrepancyReport discrepancy_report(const Generator& g, const IndexSequence& idx, const DiscrepancyOptions& opts) {
  require(opts.count >= 1, ErrorCode::InvalidArgument, "report needs at least one point");
  const auto points = sample(g, idx, opts.count);
  DiscrepancyReport r;
  r.count = opts.count;
  r.star_discrepancy = star_discrepancy(points);
  for (unsigned h = 1; h <= opts.h_max; ++h) r.weyl.emplace_back(h, weyl_sum(g, idx, h, opts.count));
  if (opts.target) r.ks_distance = ks_distance(points, *opts.target);
  for (const auto& interval : opts.intervals) {
    const double target = opts.target ? interval_measure(*opts.target, interval.lo, interval.hi)
                                      : interval.hi - interval.lo;
    r.interval_checks.push_back(interval_density_check(g, idx, interval, target, opts.count, opts.tolerance));
  }
  if (opts.running) {
    for (std::uint64_t n = 1; n <= opts.count; n *= 2) {
      const std::span<const double> prefix(points.data(), n);
      RunningStat s;
      s.n = n;
      s.star_discrepancy = star_discrepancy(prefix);
      s.weyl_1 = weyl_sum(g, idx, 1, n);
      if (opts.target) s.ks = ks_distance(prefix, *opts.target);
      r.running.push_back(s);
    }
  }
  return r;
}

}  // namespace equidist
