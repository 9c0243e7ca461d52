#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "equidist/generator.hpp"
#include "equidist/rational.hpp"

namespace equidist {

/// Dense subsets of [0,1] the envelopes are taken over.
enum class Domain { FullInterval, DyadicRationals, Rationals };

const char* to_string(Domain d) noexcept;
Domain domain_from_string(const std::string& name);

/// Membership of a generated point. Points without an exact rational are
/// read as their double value, which is always dyadic.
bool domain_contains(Domain d, const Point& p);

/// Least-denominator member of the open interval (lo, hi); dyadic for
/// DyadicRationals, any rational otherwise.
Point domain_pick(Domain d, const Rational& lo, const Rational& hi);

/// Half-open dyadic cell K_j^n = [j/2^n, (j+1)/2^n) intersected with the
/// domain (last cell closed).
struct CellEnvelope {
  double sup = 0.0;
  double inf = 0.0;
  bool approximate = false;
};

class BoundedFunction {
 public:
  enum class Kind { Constant, Affine, Step, DyadicIndicator, IntervalIndicator, Custom };

  static BoundedFunction constant(double c);
  /// t -> slope*t + intercept
  static BoundedFunction affine(double slope = 1.0, double intercept = 0.0);
  /// values[i] on [breaks[i-1], breaks[i]) with breaks strictly inside (0,1);
  /// right-continuous at each break.
  static BoundedFunction step(std::vector<Rational> breaks, std::vector<double> values);
  /// 1 on dyadic rationals, 0 elsewhere.
  static BoundedFunction dyadic_indicator();
  /// 1 on [a, b) (on [a, 1] when b = 1), 0 elsewhere.
  static BoundedFunction interval_indicator(Rational a, Rational b);
  /// Envelopes of custom functions are sampled and marked approximate. A
  /// missing bound is rejected when envelopes are requested.
  static BoundedFunction custom(std::function<double(double)> f, std::optional<double> bound,
                                std::string name = "custom");

  Kind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  double slope() const noexcept { return slope_; }
  double intercept() const noexcept { return intercept_; }
  const std::vector<Rational>& breaks() const noexcept { return breaks_; }
  const std::vector<double>& values() const noexcept { return values_; }
  const Rational& interval_start() const noexcept { return lo_; }
  const Rational& interval_end() const noexcept { return hi_; }
  std::optional<double> bound() const noexcept { return bound_; }

  double operator()(const Point& p) const;
  double operator()(double x) const { return (*this)(Point{x, std::nullopt}); }

  CellEnvelope envelope(Domain d, unsigned level, std::uint64_t index) const;

  /// A domain point of the cell with f >= sup - slack (upper) or
  /// f <= inf + slack (lower). Throws ErrorCode::Construction if none can be
  /// produced.
  Point witness(Domain d, unsigned level, std::uint64_t index, bool upper, double slack) const;

  /// Closed-form integral over [0,1] for Riemann-integrable canned variants.
  std::optional<double> exact_integral() const;

 private:
  Kind kind_ = Kind::Constant;
  std::string name_ = "constant";
  double slope_ = 0.0;
  double intercept_ = 0.0;
  std::vector<Rational> breaks_;
  std::vector<double> values_;
  Rational lo_, hi_;
  std::optional<double> bound_;
  std::function<double(double)> custom_;
};

struct Envelope {
  unsigned level = 0;
  double lower = 0.0;
  double upper = 0.0;
  bool approximate = false;
  double gap() const { return upper - lower; }
};

/// Lower and upper Darboux sums over the level-n dyadic partition, n <= 30.
Envelope envelope_integrals(const BoundedFunction& f, Domain d, unsigned level);

enum class Integrability { Integrable, NotIntegrable, Inconclusive };
const char* to_string(Integrability v) noexcept;

struct IntegrabilityVerdict {
  Integrability verdict = Integrability::Inconclusive;
  std::optional<double> value;   ///< midpoint of the envelopes when integrable
  double gap = 0.0;              ///< envelope gap at the deciding level
  unsigned level = 0;            ///< deciding level
  bool approximate = false;
  std::vector<Envelope> history;
};

/// Integrable once the gap drops below the tolerance; not integrable when the
/// last three gaps agree and exceed it; inconclusive otherwise.
IntegrabilityVerdict integrability_verdict(const BoundedFunction& f, Domain d, double tolerance,
                                           unsigned max_level);

struct AdversarialSequence {
  Generator upper;     ///< y_n: near the cell supremum
  Generator lower;     ///< z_n: near the cell infimum
  Generator combined;  ///< y on odd blocks, z on even blocks
};

/// Perturbs a u.d. base sequence inside shrinking dyadic cells (level
/// floor(log2 n) + 1) toward the envelopes and interleaves the two streams.
/// Refuses functions whose verdict is not NOT-INTEGRABLE unless
/// `allow_integrable` is set.
AdversarialSequence adversarial_sequence(const BoundedFunction& f, Domain d, const Generator& base,
                                         const BlockSchedule& schedule, bool allow_integrable = false);

/// Level used for the cell around the n-th base point.
unsigned adversarial_level(std::uint64_t n);

/// (N, (1/N) sum_{n=1..N} f(g(n))) at each checkpoint.
std::vector<std::pair<std::uint64_t, double>> cesaro_trace(const BoundedFunction& f, const Generator& g,
                                                           const std::vector<std::uint64_t>& checkpoints);

}  // namespace equidist
