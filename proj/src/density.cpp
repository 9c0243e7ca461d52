#include "equidist/density.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>
#include <utility>

#include "equidist/error.hpp"
#include "equidist/numeric.hpp"

namespace equidist {
namespace {

using i128 = __int128;

// Bitmask-backed specs cannot be evaluated past their declared horizon.
void check_horizon(const IntegerSet& set, std::uint64_t horizon) {
  require(horizon >= 1, ErrorCode::InvalidArgument, "horizon must be at least 1");
  if (horizon > set.horizon_limit()) {
    fail(ErrorCode::Precondition, "horizon " + std::to_string(horizon) +
                                      " exceeds the bitmask horizon " +
                                      std::to_string(set.horizon_limit()));
  }
}

bool has_closed_form_count(const IntegerSet& set) {
  switch (set.kind()) {
    case IntegerSet::Kind::AP:
    case IntegerSet::Kind::Finite:
    case IntegerSet::Kind::Blocks: return true;
    case IntegerSet::Kind::Complement: return has_closed_form_count(set.children()[0]);
    default: return false;
  }
}

std::optional<Rational> exact_if_periodic(const IntegerSet& set) {
  if (!set.is_periodic_combination()) return std::nullopt;
  return buck_density_exact(set);
}

DensityEstimate finish(std::vector<double> ratios, std::uint64_t horizon, double tolerance) {
  DensityEstimate est;
  est.horizon = horizon;
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  est.lower = std::clamp(*lo, 0.0, 1.0);
  est.upper = std::clamp(*hi, 0.0, 1.0);
  est.converged = est.upper - est.lower <= tolerance;
  return est;
}

// Residue-class arithmetic for the inclusion-exclusion expansion.
struct Progression {
  std::uint64_t modulus;
  std::uint64_t residue;
  auto operator<=>(const Progression&) const = default;
};

using Expansion = std::map<Progression, std::int64_t>;

std::optional<Progression> crt_intersect(Progression p, Progression q) {
  const std::uint64_t g = gcd_u64(p.modulus, q.modulus);
  const i128 diff = static_cast<i128>(q.residue) - static_cast<i128>(p.residue);
  if (diff % static_cast<i128>(g) != 0) return std::nullopt;
  const i128 lcm = static_cast<i128>(p.modulus / g) * q.modulus;
  if (lcm > (i128{1} << 62)) fail(ErrorCode::Overflow, "lcm of moduli exceeds 2^62");

  // Solve (p.modulus/g) * t = diff/g (mod q.modulus/g).
  const i128 m = q.modulus / g;
  i128 a = static_cast<i128>(p.modulus / g) % m;
  i128 old_r = a, r = m, old_s = 1, s = 0;
  while (r != 0) {
    const i128 quotient = old_r / r;
    std::tie(old_r, r) = std::pair{r, old_r - quotient * r};
    std::tie(old_s, s) = std::pair{s, old_s - quotient * s};
  }
  i128 inverse = m == 1 ? 0 : ((old_s % m) + m) % m;
  i128 t = ((diff / g) % m + m) % m * inverse % m;
  i128 x = (static_cast<i128>(p.residue) + static_cast<i128>(p.modulus) * t) % lcm;
  return Progression{static_cast<std::uint64_t>(lcm), static_cast<std::uint64_t>(x)};
}

void accumulate(Expansion& out, const Progression& p, std::int64_t coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = out.try_emplace(p, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) out.erase(it);
  }
}

Expansion add(Expansion x, const Expansion& y, std::int64_t sign) {
  for (const auto& [p, c] : y) accumulate(x, p, sign * c);
  return x;
}

Expansion multiply(const Expansion& x, const Expansion& y) {
  Expansion out;
  for (const auto& [p, c] : x) {
    for (const auto& [q, d] : y) {
      if (const auto r = crt_intersect(p, q)) accumulate(out, *r, c * d);
    }
  }
  return out;
}

const Expansion& universe() {
  static const Expansion u{{Progression{1, 0}, 1}};
  return u;
}

// Indicator of the periodic part as an integer combination of progressions.
// Finite nodes drop out: their closure is Haar-null.
Expansion expand(const IntegerSet& set) {
  using K = IntegerSet::Kind;
  const auto kids = set.children();
  switch (set.kind()) {
    case K::AP: return Expansion{{Progression{set.modulus(), set.residue()}, 1}};
    case K::Finite: return {};
    case K::Union: {
      Expansion acc = expand(kids[0]);
      for (std::size_t i = 1; i < kids.size(); ++i) {
        const Expansion next = expand(kids[i]);
        acc = add(add(acc, next, 1), multiply(acc, next), -1);
      }
      return acc;
    }
    case K::Intersection: {
      Expansion acc = expand(kids[0]);
      for (std::size_t i = 1; i < kids.size(); ++i) acc = multiply(acc, expand(kids[i]));
      return acc;
    }
    case K::Difference: {
      const Expansion a = expand(kids[0]);
      return add(a, multiply(a, expand(kids[1])), -1);
    }
    case K::Complement: return add(universe(), expand(kids[0]), -1);
    case K::Blocks:
    case K::Bitmask: break;
  }
  fail(ErrorCode::NotRepresentable,
       "Buck density is only computed for AP/Finite boolean combinations, got " + set.describe());
}

}  // namespace

WeightSequence WeightSequence::constant() { return WeightSequence{}; }

WeightSequence WeightSequence::logarithmic() {
  WeightSequence w;
  w.kind_ = Kind::Logarithmic;
  w.name_ = "log";
  return w;
}

WeightSequence WeightSequence::power(double exponent) {
  require(std::isfinite(exponent) && exponent >= 0.0 && exponent <= 1.0, ErrorCode::InvalidArgument,
          "power weights need an exponent in [0, 1] to diverge");
  WeightSequence w;
  w.kind_ = Kind::Power;
  w.exponent_ = exponent;
  w.name_ = "power";
  return w;
}

WeightSequence WeightSequence::custom(std::function<double(std::uint64_t)> rule, std::string name) {
  require(static_cast<bool>(rule), ErrorCode::InvalidArgument, "custom weight rule is empty");
  WeightSequence w;
  w.kind_ = Kind::Custom;
  w.rule_ = std::move(rule);
  w.name_ = std::move(name);
  return w;
}

double WeightSequence::operator()(std::uint64_t k) const {
  double v = 1.0;
  switch (kind_) {
    case Kind::Constant: v = 1.0; break;
    case Kind::Logarithmic: v = 1.0 / (static_cast<double>(k) + 1.0); break;
    case Kind::Power: v = std::pow(static_cast<double>(k) + 1.0, -exponent_); break;
    case Kind::Custom: v = rule_(k); break;
  }
  if (!(v > 0.0) || !std::isfinite(v)) {
    fail(ErrorCode::InvalidWeight, "weight c_" + std::to_string(k) + " is not positive");
  }
  return v;
}

std::vector<std::uint64_t> tail_checkpoints(std::uint64_t horizon) {
  require(horizon >= 1, ErrorCode::InvalidArgument, "horizon must be at least 1");
  constexpr int kSteps = 32;  // checkpoints per halving
  std::vector<std::uint64_t> points;
  points.reserve(kSteps + 1);
  for (int i = kSteps; i >= 0; --i) {
    const double n = static_cast<double>(horizon) * std::exp2(-static_cast<double>(i) / kSteps);
    points.push_back(std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(n))));
  }
  points.front() = std::max<std::uint64_t>(1, horizon / 2);
  points.back() = horizon;
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

DensityEstimate estimate_asymptotic_density(const IntegerSet& set, std::uint64_t horizon,
                                            double tolerance) {
  check_horizon(set, horizon);
  const auto checkpoints = tail_checkpoints(horizon);
  std::vector<double> ratios;
  ratios.reserve(checkpoints.size());
  if (has_closed_form_count(set)) {
    for (const auto n : checkpoints) {
      ratios.push_back(static_cast<double>(set.count_below(n)) / static_cast<double>(n));
    }
  } else {
    const auto bits = set.materialize(horizon);
    std::uint64_t count = 0;
    std::uint64_t k = 0;
    for (const auto n : checkpoints) {
      for (; k < n; ++k) count += bits[k];
      ratios.push_back(static_cast<double>(count) / static_cast<double>(n));
    }
  }
  DensityEstimate est = finish(std::move(ratios), horizon, tolerance);
  est.exact = exact_if_periodic(set);
  return est;
}

DensityEstimate estimate_weighted_density(const IntegerSet& set, const WeightSequence& weights,
                                          std::uint64_t horizon, double tolerance) {
  check_horizon(set, horizon);
  const auto checkpoints = tail_checkpoints(horizon);
  const auto bits = set.materialize(horizon);
  CompensatedSum<double> hits;
  CompensatedSum<double> total;
  std::vector<double> ratios;
  ratios.reserve(checkpoints.size());
  std::uint64_t k = 0;
  for (const auto n : checkpoints) {
    for (; k < n; ++k) {
      const double c = weights(k);
      total.add(c);
      if (bits[k]) hits.add(c);
    }
    ratios.push_back(hits.value() / total.value());
  }
  return finish(std::move(ratios), horizon, tolerance);
}

DensityEstimate estimate_uniform_density(const IntegerSet& set, std::uint64_t horizon,
                                         double tolerance) {
  check_horizon(set, horizon);
  const std::uint64_t h = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(horizon))));
  const auto bits = set.materialize(horizon);
  std::uint64_t window = 0;
  for (std::uint64_t k = 0; k < h; ++k) window += bits[k];
  std::uint64_t lo = window;
  std::uint64_t hi = window;
  for (std::uint64_t s = 1; s + h <= horizon; ++s) {
    window += bits[s + h - 1];
    window -= bits[s - 1];
    lo = std::min(lo, window);
    hi = std::max(hi, window);
  }
  DensityEstimate est;
  est.horizon = horizon;
  est.window = h;
  est.lower = static_cast<double>(lo) / static_cast<double>(h);
  est.upper = static_cast<double>(hi) / static_cast<double>(h);
  est.converged = est.upper - est.lower <= tolerance;
  est.exact = exact_if_periodic(set);
  return est;
}

Rational buck_density_exact(const IntegerSet& set) {
  Rational total(0);
  for (const auto& [p, c] : expand(set)) {
    total += Rational(c, static_cast<std::int64_t>(p.modulus));
  }
  return total;
}

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Measurable: return "measurable";
    case Verdict::NotMeasurable: return "not-measurable";
    case Verdict::UnknownAtHorizon: return "unknown-at-horizon";
  }
  return "?";
}

BuckMeasurability is_buck_measurable(const IntegerSet& set, std::uint64_t horizon) {
  BuckMeasurability out;
  if (set.is_periodic_combination()) {
    const Rational inside = buck_density_exact(set);
    const Rational outside = buck_density_exact(IntegerSet::complement(set));
    out.verdict = inside + outside == Rational(1) ? Verdict::Measurable : Verdict::NotMeasurable;
    if (out.verdict == Verdict::Measurable) out.value = inside;
    return out;
  }
  out.verdict = Verdict::UnknownAtHorizon;
  out.bounds = estimate_asymptotic_density(set, std::min(horizon, set.horizon_limit()));
  return out;
}

QAlgebraReport q_algebra_witness(const IntegerSet& a, const IntegerSet& b, std::uint64_t horizon,
                                 double tolerance) {
  check_horizon(a, horizon);
  check_horizon(b, horizon);
  const auto in_a = a.materialize(horizon);
  const auto in_b = b.materialize(horizon);
  std::uint64_t count_a = 0, count_b = 0, count_union = 0;
  for (std::uint64_t k = 0; k < horizon; ++k) {
    if (in_a[k] && in_b[k]) {
      fail(ErrorCode::Precondition, "sets are not disjoint: " + std::to_string(k) + " lies in both");
    }
    count_a += in_a[k];
    count_b += in_b[k];
    count_union += in_a[k] | in_b[k];
  }
  const double n = static_cast<double>(horizon);
  QAlgebraReport r;
  r.horizon = horizon;
  r.density_a = static_cast<double>(count_a) / n;
  r.density_b = static_cast<double>(count_b) / n;
  r.density_union = static_cast<double>(count_union) / n;
  r.gap = std::fabs(r.density_union - r.density_a - r.density_b);
  r.additive = r.gap <= tolerance;
  if (a.is_periodic_combination() && b.is_periodic_combination()) {
    r.exact_union = buck_density_exact(IntegerSet::unite({a, b}));
  }
  return r;
}

bool ap_contains(const IntegerSet& outer, const IntegerSet& inner) {
  require(outer.kind() == IntegerSet::Kind::AP && inner.kind() == IntegerSet::Kind::AP,
          ErrorCode::InvalidArgument, "ap_contains expects two AP nodes");
  return inner.modulus() % outer.modulus() == 0 && inner.residue() % outer.modulus() == outer.residue();
}

}  // namespace equidist
