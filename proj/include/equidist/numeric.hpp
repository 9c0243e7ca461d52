#pragma once

#include <cmath>
#include <cstdint>

namespace equidist {

/// Neumaier's variant of Kahan summation. Used for every Cesaro, Weyl and
/// envelope accumulation.
template <typename T = double>
class CompensatedSum {
 public:
  void add(T value) noexcept {
    const T t = sum_ + value;
    if (std::fabs(sum_) >= std::fabs(value)) {
      carry_ += (sum_ - t) + value;
    } else {
      carry_ += (value - t) + sum_;
    }
    sum_ = t;
  }

  T value() const noexcept { return sum_ + carry_; }

 private:
  T sum_ = 0;
  T carry_ = 0;
};

/// Rounds to 15 significant decimal digits, the precision every report uses.
double round15(double value);

std::uint64_t ipow(std::uint64_t base, unsigned exponent);

/// Like ipow but returns 0 when the result would exceed 2^63.
std::uint64_t checked_pow(std::uint64_t base, unsigned exponent) noexcept;

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) noexcept;

}  // namespace equidist
