#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace equidist {

/// Exact rational with int64 numerator/denominator, always reduced and with a
/// positive denominator. Arithmetic goes through 128-bit intermediates and
/// raises ErrorCode::Overflow if the reduced result does not fit.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num);  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }

  double to_double() const noexcept;
  long double to_long_double() const noexcept;

  /// "p/q", always with the slash ("0/1", "1/1").
  std::string str() const;

  /// Accepts "p/q", a bare integer, or a finite decimal such as "0.125".
  static Rational parse(std::string_view text);

  bool is_integer() const noexcept { return den_ == 1; }
  bool is_dyadic() const noexcept { return (den_ & (den_ - 1)) == 0; }

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const;

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational& a, const Rational& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept;

 private:
  static Rational from_wide(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace equidist
