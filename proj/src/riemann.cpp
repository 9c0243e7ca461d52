#include "equidist/riemann.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "equidist/error.hpp"
#include "equidist/numeric.hpp"

namespace equidist {
namespace {

using i128 = __int128;

constexpr unsigned kMaxLevel = 30;
constexpr int kCustomSamples = 33;

Rational dyadic(std::uint64_t j, unsigned level) {
  return Rational(static_cast<std::int64_t>(j), static_cast<std::int64_t>(std::uint64_t{1} << level));
}

void check_cell(unsigned level, std::uint64_t index) {
  require(level <= 62, ErrorCode::InvalidArgument, "cell level too deep");
  require(index < (std::uint64_t{1} << level), ErrorCode::InvalidArgument, "cell index out of range");
}

i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Least dyadic p/2^m strictly inside (lo, hi).
std::optional<Rational> least_dyadic_between(const Rational& lo, const Rational& hi) {
  for (unsigned m = 0; m <= 61; ++m) {
    const i128 scale = i128{1} << m;
    const i128 p = floor_div(static_cast<i128>(lo.num()) * scale, lo.den()) + 1;
    // p / 2^m < hi  <=>  p * hi.den < hi.num * 2^m
    if (p * hi.den() < static_cast<i128>(hi.num()) * scale) {
      return Rational(static_cast<std::int64_t>(p), static_cast<std::int64_t>(scale));
    }
  }
  return std::nullopt;
}

// Least-denominator rational strictly inside (lo, hi), lo < hi, by
// continued-fraction descent.
Rational simplest_between(const Rational& lo, const Rational& hi) {
  const i128 fl = floor_div(lo.num(), lo.den());
  const Rational next(static_cast<std::int64_t>(fl + 1));
  if (next < hi) return next;
  // Now fl <= lo < hi <= fl + 1.
  const Rational base(static_cast<std::int64_t>(fl));
  const Rational lo_frac = lo - base;
  const Rational hi_frac = hi - base;
  if (lo_frac.num() == 0) {
    // smallest d with 1/d < hi_frac
    const i128 d = floor_div(hi_frac.den(), hi_frac.num()) + 1;
    return base + Rational(1, static_cast<std::int64_t>(d));
  }
  const Rational inner = simplest_between(Rational(1) / hi_frac, Rational(1) / lo_frac);
  return base + Rational(1) / inner;
}

// Non-dyadic point of the open cell: (3p+1)/(3*2^m) for the smallest m.
Rational non_dyadic_in_cell(unsigned level, std::uint64_t index) {
  const i128 cell = i128{1} << level;
  for (unsigned m = 0; m <= level; ++m) {
    const i128 scale = i128{3} << m;
    // smallest num = 1 (mod 3) with num/scale > index/cell
    i128 num = floor_div(static_cast<i128>(index) * scale, cell) + 1;
    while (num % 3 != 1) ++num;
    if (num * cell < (static_cast<i128>(index) + 1) * scale) {
      return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(scale));
    }
  }
  fail(ErrorCode::Construction, "no non-dyadic witness found in cell");
}

Point make_point(const Rational& r) { return Point{r.to_double(), r}; }

bool less_than(const Point& p, const Rational& b) {
  if (p.exact) return *p.exact < b;
  return static_cast<long double>(p.value) < b.to_long_double();
}

}  // namespace

const char* to_string(Domain d) noexcept {
  switch (d) {
    case Domain::FullInterval: return "full";
    case Domain::DyadicRationals: return "dyadic";
    case Domain::Rationals: return "rationals";
  }
  return "?";
}

Domain domain_from_string(const std::string& name) {
  if (name == "full" || name == "interval") return Domain::FullInterval;
  if (name == "dyadic" || name == "dyadic-rationals") return Domain::DyadicRationals;
  if (name == "rationals" || name == "rational") return Domain::Rationals;
  fail(ErrorCode::Parse, "unknown domain '" + name + "'");
}

bool domain_contains(Domain d, const Point& p) {
  if (!(p.value >= 0.0 && p.value <= 1.0)) return false;
  if (d == Domain::DyadicRationals) return !p.exact || p.exact->is_dyadic();
  return true;
}

Point domain_pick(Domain d, const Rational& lo, const Rational& hi) {
  require(lo < hi, ErrorCode::InvalidArgument, "empty interval");
  if (d == Domain::DyadicRationals) {
    const auto r = least_dyadic_between(lo, hi);
    if (!r) fail(ErrorCode::Construction, "interval too narrow for a 62-bit dyadic");
    return make_point(*r);
  }
  return make_point(simplest_between(lo, hi));
}

BoundedFunction BoundedFunction::constant(double c) {
  require(std::isfinite(c), ErrorCode::InvalidArgument, "constant must be finite");
  BoundedFunction f;
  f.kind_ = Kind::Constant;
  f.name_ = "constant";
  f.intercept_ = c;
  f.bound_ = std::fabs(c);
  return f;
}

BoundedFunction BoundedFunction::affine(double slope, double intercept) {
  require(std::isfinite(slope) && std::isfinite(intercept), ErrorCode::InvalidArgument,
          "affine coefficients must be finite");
  BoundedFunction f;
  f.kind_ = Kind::Affine;
  f.name_ = "affine";
  f.slope_ = slope;
  f.intercept_ = intercept;
  f.bound_ = std::max(std::fabs(intercept), std::fabs(slope + intercept));
  return f;
}

BoundedFunction BoundedFunction::step(std::vector<Rational> breaks, std::vector<double> values) {
  require(values.size() == breaks.size() + 1, ErrorCode::InvalidArgument,
          "step function needs one more value than breakpoints");
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    require(breaks[i] > Rational(0) && breaks[i] < Rational(1), ErrorCode::InvalidArgument,
            "breakpoints must lie strictly inside (0,1)");
    require(i == 0 || breaks[i - 1] < breaks[i], ErrorCode::InvalidArgument,
            "breakpoints must be strictly increasing");
  }
  double bound = 0.0;
  for (const double v : values) {
    require(std::isfinite(v), ErrorCode::InvalidArgument, "step values must be finite");
    bound = std::max(bound, std::fabs(v));
  }
  BoundedFunction f;
  f.kind_ = Kind::Step;
  f.name_ = "step";
  f.breaks_ = std::move(breaks);
  f.values_ = std::move(values);
  f.bound_ = bound;
  return f;
}

BoundedFunction BoundedFunction::dyadic_indicator() {
  BoundedFunction f;
  f.kind_ = Kind::DyadicIndicator;
  f.name_ = "dyadic_indicator";
  f.bound_ = 1.0;
  return f;
}

BoundedFunction BoundedFunction::interval_indicator(Rational a, Rational b) {
  require(Rational(0) <= a && a < b && b <= Rational(1), ErrorCode::InvalidArgument,
          "indicator interval must satisfy 0 <= a < b <= 1");
  std::vector<Rational> breaks;
  std::vector<double> values;
  if (a > Rational(0)) {
    breaks.push_back(a);
    values.push_back(0.0);
  }
  values.push_back(1.0);
  if (b < Rational(1)) {
    breaks.push_back(b);
    values.push_back(0.0);
  }
  BoundedFunction f = step(std::move(breaks), std::move(values));
  f.kind_ = Kind::IntervalIndicator;
  f.name_ = "interval_indicator";
  f.lo_ = a;
  f.hi_ = b;
  return f;
}

BoundedFunction BoundedFunction::custom(std::function<double(double)> fn, std::optional<double> bound,
                                        std::string name) {
  require(static_cast<bool>(fn), ErrorCode::InvalidArgument, "custom function is empty");
  if (bound) require(std::isfinite(*bound) && *bound >= 0.0, ErrorCode::InvalidArgument, "bound must be finite");
  BoundedFunction f;
  f.kind_ = Kind::Custom;
  f.name_ = std::move(name);
  f.custom_ = std::move(fn);
  f.bound_ = bound;
  return f;
}

double BoundedFunction::operator()(const Point& p) const {
  switch (kind_) {
    case Kind::Constant: return intercept_;
    case Kind::Affine: return slope_ * p.value + intercept_;
    case Kind::Step:
    case Kind::IntervalIndicator: {
      std::size_t piece = 0;
      while (piece < breaks_.size() && !less_than(p, breaks_[piece])) ++piece;
      return values_[piece];
    }
    case Kind::DyadicIndicator: return (!p.exact || p.exact->is_dyadic()) ? 1.0 : 0.0;
    case Kind::Custom: {
      const double v = custom_(p.value);
      if (bound_ && std::fabs(v) > *bound_) {
        fail(ErrorCode::InvalidArgument, "custom function exceeds its declared bound");
      }
      return v;
    }
  }
  return 0.0;
}

CellEnvelope BoundedFunction::envelope(Domain d, unsigned level, std::uint64_t index) const {
  check_cell(level, index);
  const Rational l = dyadic(index, level);
  const Rational r = dyadic(index + 1, level);
  switch (kind_) {
    case Kind::Constant: return {intercept_, intercept_, false};
    case Kind::Affine: {
      const double a = slope_ * l.to_double() + intercept_;
      const double b = slope_ * r.to_double() + intercept_;
      return {std::max(a, b), std::min(a, b), false};
    }
    case Kind::Step:
    case Kind::IntervalIndicator: {
      double sup = -std::numeric_limits<double>::infinity();
      double inf = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < values_.size(); ++i) {
        const Rational start = i == 0 ? Rational(0) : breaks_[i - 1];
        const Rational stop = i == breaks_.size() ? Rational(1) : breaks_[i];
        if (std::max(l, start) < std::min(r, stop)) {
          sup = std::max(sup, values_[i]);
          inf = std::min(inf, values_[i]);
        }
      }
      return {sup, inf, false};
    }
    case Kind::DyadicIndicator:
      // Every cell holds dyadic points; it holds others unless the domain is dyadic.
      return {1.0, d == Domain::DyadicRationals ? 1.0 : 0.0, false};
    case Kind::Custom: {
      if (!bound_) fail(ErrorCode::InvalidArgument, "custom function without a declared bound");
      const double lo = l.to_double();
      const double width = r.to_double() - lo;
      double sup = -std::numeric_limits<double>::infinity();
      double inf = std::numeric_limits<double>::infinity();
      for (int i = 0; i <= kCustomSamples; ++i) {
        const double x = lo + width * static_cast<double>(i) / (kCustomSamples + 1);
        const double v = (*this)(x);
        sup = std::max(sup, v);
        inf = std::min(inf, v);
      }
      return {sup, inf, true};
    }
  }
  return {};
}

Point BoundedFunction::witness(Domain d, unsigned level, std::uint64_t index, bool upper, double slack) const {
  check_cell(level, index);
  require(slack > 0.0, ErrorCode::InvalidArgument, "witness slack must be positive");
  const Rational l = dyadic(index, level);
  const Rational r = dyadic(index + 1, level);
  switch (kind_) {
    case Kind::Constant: return make_point(l);
    case Kind::Affine: {
      // The extreme value sits at an end of the cell; the right end is
      // excluded, so approach it by dyadic steps.
      const bool at_right = (slope_ > 0.0) == upper && slope_ != 0.0;
      if (!at_right) return make_point(l);
      for (unsigned m = level + 1; m <= 61; ++m) {
        if (std::fabs(slope_) * std::ldexp(1.0, -static_cast<int>(m)) <= slack) {
          return make_point(r - Rational(1, static_cast<std::int64_t>(std::uint64_t{1} << m)));
        }
      }
      fail(ErrorCode::Construction, "affine witness needs more than 61 bits");
    }
    case Kind::Step:
    case Kind::IntervalIndicator: {
      const CellEnvelope env = envelope(d, level, index);
      const double target = upper ? env.sup : env.inf;
      for (std::size_t i = 0; i < values_.size(); ++i) {
        if (values_[i] != target) continue;
        const Rational start = std::max(l, i == 0 ? Rational(0) : breaks_[i - 1]);
        const Rational stop = std::min(r, i == breaks_.size() ? Rational(1) : breaks_[i]);
        if (start < stop) return domain_pick(d, start, stop);
      }
      fail(ErrorCode::Construction, "step witness not found");
    }
    case Kind::DyadicIndicator:
      if (upper || d == Domain::DyadicRationals) return make_point(l);
      return make_point(non_dyadic_in_cell(level, index));
    case Kind::Custom: {
      const CellEnvelope env = envelope(d, level, index);
      const double lo = l.to_double();
      const double width = r.to_double() - lo;
      for (int i = 0; i <= kCustomSamples; ++i) {
        const double x = lo + width * static_cast<double>(i) / (kCustomSamples + 1);
        const double v = (*this)(x);
        if ((upper && v >= env.sup - slack) || (!upper && v <= env.inf + slack)) return Point{x, std::nullopt};
      }
      fail(ErrorCode::Construction, "custom witness not found");
    }
  }
  fail(ErrorCode::Construction, "unknown function kind");
}

std::optional<double> BoundedFunction::exact_integral() const {
  switch (kind_) {
    case Kind::Constant: return intercept_;
    case Kind::Affine: return slope_ / 2.0 + intercept_;
    case Kind::Step:
    case Kind::IntervalIndicator: {
      long double total = 0.0L;
      for (std::size_t i = 0; i < values_.size(); ++i) {
        const Rational start = i == 0 ? Rational(0) : breaks_[i - 1];
        const Rational stop = i == breaks_.size() ? Rational(1) : breaks_[i];
        total += values_[i] * (stop - start).to_long_double();
      }
      return static_cast<double>(total);
    }
    case Kind::DyadicIndicator:
    case Kind::Custom: return std::nullopt;
  }
  return std::nullopt;
}

Envelope envelope_integrals(const BoundedFunction& f, Domain d, unsigned level) {
  require(level <= kMaxLevel, ErrorCode::InvalidArgument, "envelope level must not exceed 30");
  const std::uint64_t cells = std::uint64_t{1} << level;
  const long double width = std::ldexp(1.0L, -static_cast<int>(level));
  CompensatedSum<long double> upper;
  CompensatedSum<long double> lower;
  bool approximate = false;
  for (std::uint64_t j = 0; j < cells; ++j) {
    const CellEnvelope env = f.envelope(d, level, j);
    upper.add(env.sup * width);
    lower.add(env.inf * width);
    approximate = approximate || env.approximate;
  }
  Envelope e;
  e.level = level;
  e.upper = static_cast<double>(upper.value());
  e.lower = std::min(static_cast<double>(lower.value()), e.upper);
  e.approximate = approximate;
  return e;
}

const char* to_string(Integrability v) noexcept {
  switch (v) {
    case Integrability::Integrable: return "INTEGRABLE";
    case Integrability::NotIntegrable: return "NOT-INTEGRABLE";
    case Integrability::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

IntegrabilityVerdict integrability_verdict(const BoundedFunction& f, Domain d, double tolerance,
                                           unsigned max_level) {
  require(tolerance > 0.0, ErrorCode::InvalidArgument, "tolerance must be positive");
  require(max_level >= 1 && max_level <= kMaxLevel, ErrorCode::InvalidArgument, "max level must be in 1..30");
  IntegrabilityVerdict v;
  for (unsigned n = 1; n <= max_level; ++n) {
    const Envelope e = envelope_integrals(f, d, n);
    v.history.push_back(e);
    v.approximate = v.approximate || e.approximate;
    if (e.gap() < tolerance) {
      v.verdict = Integrability::Integrable;
      v.value = (e.lower + e.upper) / 2.0;
      v.gap = e.gap();
      v.level = n;
      return v;
    }
  }
  const auto& h = v.history;
  v.level = max_level;
  v.gap = h.back().gap();
  if (h.size() >= 3 && h[h.size() - 1].gap() == h[h.size() - 2].gap() &&
      h[h.size() - 2].gap() == h[h.size() - 3].gap()) {
    v.verdict = Integrability::NotIntegrable;
  } else {
    v.verdict = Integrability::Inconclusive;
  }
  return v;
}

unsigned adversarial_level(std::uint64_t n) {
  require(n >= 1, ErrorCode::InvalidArgument, "sequence index starts at 1");
  return static_cast<unsigned>(std::bit_width(n));  // floor(log2 n) + 1
}

namespace {

class EnvelopeSource final : public PointSource {
 public:
  EnvelopeSource(BoundedFunction f, Domain d, Generator base, bool upper)
      : f_(std::move(f)), d_(d), base_(std::move(base)), upper_(upper) {}

  Point point(std::uint64_t n) const override {
    const Point a = base_.point(n);
    if (n == 0) return a;
    const unsigned level = std::min(adversarial_level(n), 62U);
    const std::uint64_t cells = std::uint64_t{1} << level;
    std::uint64_t j = 0;
    if (a.exact) {
      j = static_cast<std::uint64_t>(floor_div(static_cast<i128>(a.exact->num()) * cells, a.exact->den()));
    } else {
      j = static_cast<std::uint64_t>(std::floor(static_cast<long double>(a.value) * cells));
    }
    j = std::min(j, cells - 1);
    const double slack = 1.0 / static_cast<double>(n);
    const CellEnvelope env = f_.envelope(d_, level, j);
    const double fa = f_(a);
    const bool good = upper_ ? fa >= env.sup - slack : fa <= env.inf + slack;
    if (good && domain_contains(d_, a)) return a;
    return f_.witness(d_, level, j, upper_, slack);
  }

  std::string describe() const override {
    return std::string(upper_ ? "upper" : "lower") + "-envelope(" + f_.name() + ", " + base_.describe() + ")";
  }

 private:
  BoundedFunction f_;
  Domain d_;
  Generator base_;
  bool upper_;
};

}  // namespace

AdversarialSequence adversarial_sequence(const BoundedFunction& f, Domain d, const Generator& base,
                                         const BlockSchedule& schedule, bool allow_integrable) {
  if (!allow_integrable) {
    const auto verdict = integrability_verdict(f, d, 1e-9, 12);
    if (verdict.verdict != Integrability::NotIntegrable) {
      fail(ErrorCode::Precondition, std::string("envelope verdict is ") + to_string(verdict.verdict) +
                                        ", not NOT-INTEGRABLE; set the override to build anyway");
    }
  }
  AdversarialSequence out{
      Generator::custom(std::make_shared<EnvelopeSource>(f, d, base, true)),
      Generator::custom(std::make_shared<EnvelopeSource>(f, d, base, false)),
      Generator::constant(0.0),
  };
  out.combined = Generator::interleaved(out.upper, out.lower, schedule);
  return out;
}

std::vector<std::pair<std::uint64_t, double>> cesaro_trace(const BoundedFunction& f, const Generator& g,
                                                           const std::vector<std::uint64_t>& checkpoints) {
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    require(checkpoints[i] >= 1, ErrorCode::InvalidArgument, "checkpoints must be positive");
    require(i == 0 || checkpoints[i - 1] < checkpoints[i], ErrorCode::InvalidArgument,
            "checkpoints must be increasing");
  }
  std::vector<std::pair<std::uint64_t, double>> out;
  out.reserve(checkpoints.size());
  CompensatedSum<double> sum;
  std::uint64_t n = 0;
  for (const auto target : checkpoints) {
    while (n < target) {
      ++n;
      sum.add(f(g.point(n)));
    }
    out.emplace_back(target, sum.value() / static_cast<double>(target));
  }
  return out;
}

}  // namespace equidist
