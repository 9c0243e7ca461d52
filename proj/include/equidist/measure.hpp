#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace equidist {

/// Borel probability measures on [0,1] built from base-q digit weights:
/// a level-n cell with digits d_1..d_n carries mass w[d_1]*...*w[d_n].
class Measure {
 public:
  enum class Kind { Uniform, Binomial, Multinomial, Cantor };

  static Measure uniform();
  /// Left half of every dyadic cell gets r, the right half 1-r.
  static Measure binomial(double r);
  /// Base q = weights.size(); each weight in (0,1), summing to 1 within 1e-12.
  static Measure multinomial(std::vector<double> weights);
  /// Middle-thirds Cantor measure: base 3, weights (1/2, 0, 1/2).
  static Measure cantor();

  Kind kind() const noexcept { return kind_; }
  unsigned base() const noexcept { return static_cast<unsigned>(weights_.size()); }
  std::span<const double> weights() const noexcept { return weights_; }
  /// Binomial parameter (0.5 for Uniform).
  double r() const noexcept { return weights_[0]; }

  /// Uniform accepts every base, the others only their own.
  bool accepts_base(unsigned q) const noexcept;

  std::string describe() const;

 private:
  Kind kind_ = Kind::Uniform;
  std::vector<double> weights_{0.5, 0.5};
};

/// I_{n,j} = [j/q^n, (j+1)/q^n), with the last cell of every level closed.
struct QadicCell {
  unsigned base = 2;
  unsigned level = 0;
  std::uint64_t index = 0;

  /// Validates q >= 2, q^n < 2^63 and j < q^n.
  static QadicCell make(unsigned base, unsigned level, std::uint64_t index);

  std::uint64_t count() const;  ///< q^n
  double left() const;
  double right() const;
  bool contains(double x) const;
  /// Base-q digits of the index, most significant first, exactly level of them.
  std::vector<unsigned> digits() const;
};

/// Mass of a cell. Throws ErrorCode::IncompatibleCell on a base mismatch.
double cell_measure(const Measure& m, const QadicCell& cell);

/// F(x) = m([0, x]), computed digit by digit until the unresolved cell mass
/// drops below eps. F(0) = 0 and F(1) = 1 exactly.
double cdf(const Measure& m, double x, double eps = 1e-15);

/// Left-most x with |F(x) - u| <= eps; non-decreasing in u.
double quantile(const Measure& m, double u, double eps = 1e-15);

/// m([a, b]) = F(b) - F(a) for 0 <= a <= b <= 1.
double interval_measure(const Measure& m, double a, double b, double eps = 1e-15);

/// Mass of the singleton {x}. Zero for every supported measure since no
/// digit weight equals one.
double point_mass(const Measure& m, double x);

/// True iff both endpoints are null for m.
bool is_continuity_interval(const Measure& m, double a, double b);

}  // namespace equidist
