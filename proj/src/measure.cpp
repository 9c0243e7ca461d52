#include "equidist/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "equidist/error.hpp"
#include "equidist/numeric.hpp"

namespace equidist {
namespace {

// Points within this many local cell units of a digit boundary are treated as
// lying on it, so q-adic rationals that arrive rounded (1/3 as a double) get
// their terminating expansion.
constexpr long double kSnap = 1e-12L;
constexpr long double kTieTolerance = 1e-15L;
constexpr int kMaxDepth = 200;

void check_unit(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    fail(ErrorCode::InvalidArgument, std::string(what) + " must lie in [0,1]");
  }
}

std::vector<long double> cumulative(std::span<const double> w) {
  std::vector<long double> c(w.size() + 1, 0.0L);
  for (std::size_t i = 0; i < w.size(); ++i) c[i + 1] = c[i] + static_cast<long double>(w[i]);
  c.back() = 1.0L;
  return c;
}

}  // namespace

Measure Measure::uniform() { return Measure{}; }

Measure Measure::binomial(double r) {
  require(r > 0.0 && r < 1.0, ErrorCode::InvalidArgument, "binomial parameter must lie in (0,1)");
  Measure m;
  m.kind_ = Kind::Binomial;
  m.weights_ = {r, 1.0 - r};
  return m;
}

Measure Measure::multinomial(std::vector<double> weights) {
  require(weights.size() >= 2, ErrorCode::InvalidArgument, "multinomial base must be at least 2");
  for (const double w : weights) {
    require(w > 0.0 && w < 1.0, ErrorCode::InvalidArgument, "multinomial weights must lie in (0,1)");
  }
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  require(std::fabs(total - 1.0) <= 1e-12, ErrorCode::InvalidArgument,
          "multinomial weights must sum to 1");
  Measure m;
  m.kind_ = Kind::Multinomial;
  m.weights_ = std::move(weights);
  return m;
}

Measure Measure::cantor() {
  Measure m;
  m.kind_ = Kind::Cantor;
  m.weights_ = {0.5, 0.0, 0.5};
  return m;
}

bool Measure::accepts_base(unsigned q) const noexcept {
  return q >= 2 && (kind_ == Kind::Uniform || q == base());
}

std::string Measure::describe() const {
  switch (kind_) {
    case Kind::Uniform: return "uniform";
    case Kind::Binomial: return "binomial(" + std::to_string(r()) + ")";
    case Kind::Multinomial: return "multinomial(q=" + std::to_string(base()) + ")";
    case Kind::Cantor: return "cantor";
  }
  return "?";
}

QadicCell QadicCell::make(unsigned base, unsigned level, std::uint64_t index) {
  require(base >= 2, ErrorCode::InvalidArgument, "cell base must be at least 2");
  const std::uint64_t n = checked_pow(base, level);
  require(n != 0, ErrorCode::Overflow, "cell level too deep for 64-bit indices");
  require(index < n, ErrorCode::InvalidArgument, "cell index out of range");
  return QadicCell{base, level, index};
}

std::uint64_t QadicCell::count() const { return ipow(base, level); }

double QadicCell::left() const {
  return static_cast<double>(static_cast<long double>(index) / static_cast<long double>(count()));
}

double QadicCell::right() const {
  return static_cast<double>(static_cast<long double>(index + 1) / static_cast<long double>(count()));
}

bool QadicCell::contains(double x) const {
  const std::uint64_t n = count();
  if (!(x >= 0.0 && x <= 1.0)) return false;
  // Compare x*q^n against the integer endpoints in long double; exact for
  // the q-adic points the generators produce.
  const long double scaled = static_cast<long double>(x) * static_cast<long double>(n);
  if (index + 1 == n) return scaled >= static_cast<long double>(index);
  return scaled >= static_cast<long double>(index) && scaled < static_cast<long double>(index + 1);
}

std::vector<unsigned> QadicCell::digits() const {
  std::vector<unsigned> d(level, 0);
  std::uint64_t j = index;
  for (unsigned i = level; i-- > 0;) {
    d[i] = static_cast<unsigned>(j % base);
    j /= base;
  }
  return d;
}

double cell_measure(const Measure& m, const QadicCell& cell) {
  if (!m.accepts_base(cell.base)) {
    fail(ErrorCode::IncompatibleCell, "cell base " + std::to_string(cell.base) +
                                          " does not match " + m.describe());
  }
  if (m.kind() == Measure::Kind::Uniform) {
    return 1.0 / static_cast<double>(cell.count());
  }
  const auto w = m.weights();
  double mass = 1.0;
  for (const unsigned d : cell.digits()) mass *= w[d];
  return mass;
}

double cdf(const Measure& m, double x, double eps) {
  require(eps > 0.0, ErrorCode::InvalidArgument, "precision must be positive");
  check_unit(x, "cdf argument");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  if (m.kind() == Measure::Kind::Uniform) return x;

  const auto w = m.weights();
  const auto cum = cumulative(w);
  const long double q = m.base();
  long double pos = x;
  long double acc = 0.0L;
  long double mass = 1.0L;
  for (int depth = 0; depth < kMaxDepth && mass >= eps; ++depth) {
    const long double y = pos * q;
    long double digit = std::floor(y);
    long double frac = y - digit;
    if (frac > 1.0L - kSnap) {
      digit += 1.0L;
      frac = 0.0L;
    } else if (frac < kSnap) {
      frac = 0.0L;
    }
    if (digit >= q) return static_cast<double>(acc + mass);
    const auto d = static_cast<std::size_t>(digit);
    acc += mass * cum[d];
    mass *= w[d];
    pos = frac;
    if (pos == 0.0L || mass == 0.0L) return static_cast<double>(acc);
  }
  return static_cast<double>(std::clamp(acc + mass * pos, 0.0L, 1.0L));
}

double quantile(const Measure& m, double u, double eps) {
  require(eps > 0.0, ErrorCode::InvalidArgument, "precision must be positive");
  check_unit(u, "quantile argument");
  if (m.kind() == Measure::Kind::Uniform) return u;
  if (u == 0.0) return 0.0;

  const auto w = m.weights();
  const auto cum = cumulative(w);
  const unsigned q = m.base();
  long double left = 0.0L;
  long double width = 1.0L;
  long double rem = u;
  long double mass = 1.0L;
  for (int depth = 0; depth < kMaxDepth; ++depth) {
    if (mass <= eps && width <= eps) break;
    unsigned d = 0;
    while (d + 1 < q && (rem > cum[d + 1] + kTieTolerance || w[d] == 0.0)) ++d;
    rem = std::clamp((rem - cum[d]) / static_cast<long double>(w[d]), 0.0L, 1.0L);
    width /= q;
    left += width * d;
    mass *= w[d];
    if (width == 0.0L) break;
  }
  return static_cast<double>(std::clamp(left + width * rem, 0.0L, 1.0L));
}

double interval_measure(const Measure& m, double a, double b, double eps) {
  check_unit(a, "interval start");
  check_unit(b, "interval end");
  require(a <= b, ErrorCode::InvalidArgument, "interval start must not exceed its end");
  return std::max(0.0, cdf(m, b, eps) - cdf(m, a, eps));
}

double point_mass(const Measure& m, double x) {
  check_unit(x, "point");
  const auto w = m.weights();
  // The cell around x has mass at most max(w)^n, which vanishes unless some
  // digit carries everything.
  if (*std::max_element(w.begin(), w.end()) >= 1.0) {
    fail(ErrorCode::Unsupported, "measure with a unit digit weight has atoms");
  }
  return 0.0;
}

bool is_continuity_interval(const Measure& m, double a, double b) {
  check_unit(a, "interval start");
  check_unit(b, "interval end");
  require(a <= b, ErrorCode::InvalidArgument, "interval start must not exceed its end");
  return point_mass(m, a) == 0.0 && point_mass(m, b) == 0.0;
}

}  // namespace equidist
