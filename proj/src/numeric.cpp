#include "equidist/numeric.hpp"

#include <cstdio>
#include <cstdlib>

#include "equidist/error.hpp"

namespace equidist {

double round15(double value) {
  if (!std::isfinite(value) || value == 0.0) return value;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", value);
  return std::strtod(buf, nullptr);
}

std::uint64_t ipow(std::uint64_t base, unsigned exponent) {
  const std::uint64_t r = checked_pow(base, exponent);
  if (r == 0 && base != 0) fail(ErrorCode::Overflow, "integer power overflows 2^63");
  return r;
}

std::uint64_t checked_pow(std::uint64_t base, unsigned exponent) noexcept {
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 63;
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exponent; ++i) {
    if (base != 0 && r > kLimit / base) return 0;
    r *= base;
  }
  return r;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) noexcept {
  while (b != 0) {
    const std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace equidist
