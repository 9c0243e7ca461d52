#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "equidist/measure.hpp"
#include "equidist/rational.hpp"

namespace equidist {

/// A generated point. `exact` is set when the value is known as a rational,
/// which matters for functions that see the difference (dyadic indicators).
struct Point {
  double value = 0.0;
  std::optional<Rational> exact;
};

/// Extension hook for sequences built elsewhere (decomposition maps,
/// adversarial perturbations).
class PointSource {
 public:
  virtual ~PointSource() = default;
  virtual Point point(std::uint64_t k) const = 0;
  virtual std::string describe() const = 0;
};

/// Block lengths M_1, M_2, ... for interleaving two sequences. Index n >= 1
/// belongs to block i when S_{i-1} < n <= S_i with S_i = M_1 + ... + M_i.
class BlockSchedule {
 public:
  /// M_k = k!; blocks past the cap never end.
  static BlockSchedule factorial(unsigned max_blocks = 20);

  unsigned max_blocks() const noexcept { return static_cast<unsigned>(lengths_.size()); }
  std::uint64_t length(unsigned block) const;  ///< M_block, 1-based
  std::uint64_t end(unsigned block) const;     ///< S_block, 1-based
  unsigned block_of(std::uint64_t n) const;    ///< 1-based block holding n >= 1
  /// Odd blocks draw from the first stream.
  bool uses_first(std::uint64_t n) const { return block_of(n) % 2 == 1; }
  std::string name() const { return "factorial"; }

 private:
  std::vector<std::uint64_t> lengths_;
  std::vector<std::uint64_t> ends_;
};

/// Deterministic map k -> x(k) in [0,1]. Immutable value type.
class Generator {
 public:
  enum class Kind { RadicalInverse, Kronecker, Transport, CantorCode, Constant, Interleaved, Custom };

  static Generator radical_inverse(unsigned base);
  /// x(k) = frac(k * alpha).
  static Generator kronecker(long double alpha, std::string label);
  /// y(k) = quantile(m, inner(k)).
  static Generator transport(Generator inner, Measure m);
  /// Binary digits of inner(k) re-read as ternary digits 0/2.
  static Generator cantor_code(Generator inner);
  static Generator constant(double value);
  static Generator interleaved(Generator first, Generator second, BlockSchedule schedule);
  static Generator custom(std::shared_ptr<const PointSource> source);

  Kind kind() const noexcept;
  unsigned base() const;                 ///< RadicalInverse only
  long double alpha() const;             ///< Kronecker only
  const std::string& label() const;      ///< Kronecker only
  const Generator& inner() const;        ///< Transport, CantorCode
  const Measure& measure() const;        ///< Transport
  double constant_value() const;         ///< Constant
  const Generator& first() const;        ///< Interleaved
  const Generator& second() const;       ///< Interleaved
  const BlockSchedule& schedule() const; ///< Interleaved

  double operator()(std::uint64_t k) const { return point(k).value; }
  Point point(std::uint64_t k) const;

  std::string describe() const;

 private:
  struct Impl;
  explicit Generator(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// Base-q digit reversal of k mirrored across the radix point, as an exact
/// rational. Throws ErrorCode::Overflow when q^digits exceeds int64.
Rational radical_inverse_exact(std::uint64_t k, unsigned base);
double radical_inverse(std::uint64_t k, unsigned base);

/// sum_i 2*b_i*3^-i for the terminating binary expansion 0.b_1b_2... of x;
/// cantor_code_value(1) = 1.
double cantor_code_value(double x);
/// Exact version for dyadic inputs whose ternary image fits int64.
std::optional<Rational> cantor_code_exact(const Rational& x);

}  // namespace equidist
