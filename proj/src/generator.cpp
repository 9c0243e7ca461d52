#include "equidist/generator.hpp"

#include <cmath>
#include <limits>
#include <variant>

#include "equidist/error.hpp"
#include "equidist/numeric.hpp"

namespace equidist {

namespace {

constexpr double kTransportPrecision = 1e-15;

struct RadicalData { unsigned base; };
struct KroneckerData { long double alpha; std::string label; };
struct TransportData { Generator inner; Measure measure; };
struct CantorData { Generator inner; };
struct ConstantData { double value; };
struct InterleavedData { Generator first; Generator second; BlockSchedule schedule; };
struct CustomData { std::shared_ptr<const PointSource> source; };

}  // namespace

struct Generator::Impl {
  std::variant<RadicalData, KroneckerData, TransportData, CantorData, ConstantData, InterleavedData,
               CustomData>
      data;
};

BlockSchedule BlockSchedule::factorial(unsigned max_blocks) {
  require(max_blocks >= 1 && max_blocks <= 20, ErrorCode::InvalidArgument,
          "factorial schedule supports 1..20 blocks");
  BlockSchedule s;
  std::uint64_t m = 1;
  std::uint64_t total = 0;
  for (unsigned k = 1; k <= max_blocks; ++k) {
    m *= k;
    total += m;
    s.lengths_.push_back(m);
    s.ends_.push_back(total);
  }
  return s;
}

std::uint64_t BlockSchedule::length(unsigned block) const {
  require(block >= 1 && block <= lengths_.size(), ErrorCode::InvalidArgument, "block out of range");
  return lengths_[block - 1];
}

std::uint64_t BlockSchedule::end(unsigned block) const {
  require(block >= 1 && block <= ends_.size(), ErrorCode::InvalidArgument, "block out of range");
  return ends_[block - 1];
}

unsigned BlockSchedule::block_of(std::uint64_t n) const {
  for (unsigned i = 0; i < ends_.size(); ++i) {
    if (n <= ends_[i]) return i + 1;
  }
  return static_cast<unsigned>(ends_.size());
}

Generator Generator::radical_inverse(unsigned base) {
  require(base >= 2, ErrorCode::InvalidArgument, "radical inverse base must be at least 2");
  return Generator(std::make_shared<Impl>(Impl{RadicalData{base}}));
}

Generator Generator::kronecker(long double alpha, std::string label) {
  require(std::isfinite(alpha), ErrorCode::InvalidArgument, "Kronecker alpha must be finite");
  return Generator(std::make_shared<Impl>(Impl{KroneckerData{alpha, std::move(label)}}));
}

Generator Generator::transport(Generator inner, Measure m) {
  return Generator(std::make_shared<Impl>(Impl{TransportData{std::move(inner), std::move(m)}}));
}

Generator Generator::cantor_code(Generator inner) {
  return Generator(std::make_shared<Impl>(Impl{CantorData{std::move(inner)}}));
}

Generator Generator::constant(double value) {
  require(value >= 0.0 && value <= 1.0, ErrorCode::InvalidArgument, "constant must lie in [0,1]");
  return Generator(std::make_shared<Impl>(Impl{ConstantData{value}}));
}

Generator Generator::interleaved(Generator first, Generator second, BlockSchedule schedule) {
  return Generator(std::make_shared<Impl>(
      Impl{InterleavedData{std::move(first), std::move(second), std::move(schedule)}}));
}

Generator Generator::custom(std::shared_ptr<const PointSource> source) {
  require(source != nullptr, ErrorCode::InvalidArgument, "custom generator needs a source");
  return Generator(std::make_shared<Impl>(Impl{CustomData{std::move(source)}}));
}

Generator::Kind Generator::kind() const noexcept {
  return static_cast<Kind>(impl_->data.index());
}

namespace {
template <typename T>
const T& as(const auto& data, const char* what) {
  const T* p = std::get_if<T>(&data);
  if (p == nullptr) fail(ErrorCode::InvalidArgument, std::string("generator is not ") + what);
  return *p;
}
}  // namespace

unsigned Generator::base() const { return as<RadicalData>(impl_->data, "a radical inverse").base; }
long double Generator::alpha() const { return as<KroneckerData>(impl_->data, "Kronecker").alpha; }
const std::string& Generator::label() const { return as<KroneckerData>(impl_->data, "Kronecker").label; }

const Generator& Generator::inner() const {
  if (const auto* t = std::get_if<TransportData>(&impl_->data)) return t->inner;
  return as<CantorData>(impl_->data, "a transport or Cantor map").inner;
}

const Measure& Generator::measure() const { return as<TransportData>(impl_->data, "a transport").measure; }
double Generator::constant_value() const { return as<ConstantData>(impl_->data, "constant").value; }
const Generator& Generator::first() const { return as<InterleavedData>(impl_->data, "interleaved").first; }
const Generator& Generator::second() const { return as<InterleavedData>(impl_->data, "interleaved").second; }
const BlockSchedule& Generator::schedule() const {
  return as<InterleavedData>(impl_->data, "interleaved").schedule;
}

Point Generator::point(std::uint64_t k) const {
  struct Visitor {
    std::uint64_t k;
    Point operator()(const RadicalData& d) const {
      Point p;
      p.value = equidist::radical_inverse(k, d.base);
      try {
        p.exact = radical_inverse_exact(k, d.base);
      } catch (const Error&) {
        p.exact.reset();
      }
      return p;
    }
    Point operator()(const KroneckerData& d) const {
      const long double v = static_cast<long double>(k) * d.alpha;
      const long double f = v - std::floor(v);
      return Point{static_cast<double>(f), std::nullopt};
    }
    Point operator()(const TransportData& d) const {
      return Point{quantile(d.measure, d.inner(k), kTransportPrecision), std::nullopt};
    }
    Point operator()(const CantorData& d) const {
      const Point in = d.inner.point(k);
      Point p;
      p.value = cantor_code_value(in.value);
      if (in.exact) p.exact = cantor_code_exact(*in.exact);
      return p;
    }
    Point operator()(const ConstantData& d) const { return Point{d.value, std::nullopt}; }
    Point operator()(const InterleavedData& d) const {
      if (k == 0 || d.schedule.uses_first(k)) return d.first.point(k);
      return d.second.point(k);
    }
    Point operator()(const CustomData& d) const { return d.source->point(k); }
  };
  return std::visit(Visitor{k}, impl_->data);
}

std::string Generator::describe() const {
  struct Visitor {
    std::string operator()(const RadicalData& d) const { return "radical(" + std::to_string(d.base) + ")"; }
    std::string operator()(const KroneckerData& d) const { return "kronecker(" + d.label + ")"; }
    std::string operator()(const TransportData& d) const {
      return "transport(" + d.inner.describe() + ", " + d.measure.describe() + ")";
    }
    std::string operator()(const CantorData& d) const { return "cantor(" + d.inner.describe() + ")"; }
    std::string operator()(const ConstantData& d) const { return "constant(" + std::to_string(d.value) + ")"; }
    std::string operator()(const InterleavedData& d) const {
      return "interleaved(" + d.first.describe() + ", " + d.second.describe() + ")";
    }
    std::string operator()(const CustomData& d) const { return d.source->describe(); }
  };
  return std::visit(Visitor{}, impl_->data);
}

Rational radical_inverse_exact(std::uint64_t k, unsigned base) {
  require(base >= 2, ErrorCode::InvalidArgument, "radical inverse base must be at least 2");
  constexpr std::uint64_t kLimit = static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max());
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  while (k != 0) {
    if (den > kLimit / base) fail(ErrorCode::Overflow, "radical inverse denominator overflows");
    num = num * base + k % base;
    den *= base;
    k /= base;
  }
  return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

double radical_inverse(std::uint64_t k, unsigned base) {
  require(base >= 2, ErrorCode::InvalidArgument, "radical inverse base must be at least 2");
  // Exact numerator/denominator while q^digits fits, so the result is the
  // correctly rounded value of the rational.
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 63;
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  std::uint64_t rest = k;
  while (rest != 0 && den <= kLimit / base) {
    num = num * base + rest % base;
    den *= base;
    rest /= base;
  }
  if (rest == 0) {
    return static_cast<double>(static_cast<long double>(num) / static_cast<long double>(den));
  }
  long double value = 0.0L;
  long double scale = 1.0L / base;
  for (std::uint64_t r = k; r != 0; r /= base, scale /= base) value += (r % base) * scale;
  return static_cast<double>(value);
}

double cantor_code_value(double x) {
  require(x >= 0.0 && x <= 1.0, ErrorCode::InvalidArgument, "Cantor code input must lie in [0,1]");
  if (x == 1.0) return 1.0;
  long double value = 0.0L;
  long double scale = 1.0L;
  double rest = x;  // doubling and subtracting 1 are exact in binary floating point
  for (int i = 0; i < 1100 && rest != 0.0; ++i) {
    rest *= 2.0;
    scale /= 3.0L;
    if (rest >= 1.0) {
      value += 2.0L * scale;
      rest -= 1.0;
    }
  }
  return static_cast<double>(value);
}

std::optional<Rational> cantor_code_exact(const Rational& x) {
  if (x.num() < 0 || x > Rational(1) || !x.is_dyadic()) return std::nullopt;
  if (x == Rational(1)) return Rational(1);
  constexpr std::int64_t kLimit = std::numeric_limits<std::int64_t>::max() / 3;
  std::int64_t num = x.num();
  std::int64_t den = x.den();
  std::int64_t out = 0;
  std::int64_t out_den = 1;
  while (num != 0) {
    if (out_den > kLimit) return std::nullopt;
    // next binary digit of num/den
    num *= 2;
    const std::int64_t bit = num >= den ? 1 : 0;
    if (bit) num -= den;
    out = out * 3 + 2 * bit;
    out_den *= 3;
  }
  return Rational(out, out_den);
}

}  // namespace equidist
