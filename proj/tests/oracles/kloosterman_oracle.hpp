#pragma once

// Test-only reference: Kloosterman sums as complex long double sums, with
// its own Euclid. Shares no code with the library.

#include <cmath>
#include <complex>
#include <cstdint>

namespace oracle {

inline std::int64_t egcd_inverse(std::int64_t a, std::int64_t m) {
  std::int64_t r0 = m, r1 = ((a % m) + m) % m, s0 = 0, s1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::int64_t t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (r0 != 1) return -1;
  return ((s0 % m) + m) % m;
}

inline std::complex<long double> kloosterman(std::int64_t m, std::int64_t n, std::int64_t c) {
  if (c == 1) return 1.0L;
  const long double two_pi = 2.0L * 3.141592653589793238462643383279502884L;
  std::complex<long double> s = 0;
  for (std::int64_t x = 1; x < c; ++x) {
    const std::int64_t xi = egcd_inverse(x, c);
    if (xi < 0) continue;
    const std::int64_t e = static_cast<std::int64_t>((static_cast<__int128>(m % c + c) * x +
                                                      static_cast<__int128>(n % c + c) * xi) % c);
    s += std::polar(1.0L, two_pi * static_cast<long double>(e) / static_cast<long double>(c));
  }
  return s;
}

inline int mobius(std::int64_t n) {
  int sign = 1;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    n /= d;
    if (n % d == 0) return 0;
    sign = -sign;
  }
  if (n > 1) sign = -sign;
  return sign;
}

}  // namespace oracle
