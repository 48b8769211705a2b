#pragma once

#include <cstdint>
#include <vector>

#include "sttrace/ball.hpp"
#include "sttrace/int_polynomial.hpp"

namespace sttrace {

/// Element of Z[zeta_c] written as sum_j coeffs[j] * zeta_c^j, zeta_c = e^{2 pi i / c}.
/// The representation is not unique; equality is decided by is_zero_exact.
struct CyclotomicElement {
  std::int64_t modulus = 1;
  std::vector<std::int64_t> coeffs{0};

  CyclotomicElement() = default;
  explicit CyclotomicElement(std::int64_t c);
  static CyclotomicElement one() {
    CyclotomicElement e(1);
    e.coeffs[0] = 1;
    return e;
  }

  /// Adds `count` copies of zeta_c^exponent (exponent reduced mod c).
  void add_root(std::int64_t exponent, std::int64_t count = 1);

  /// Complex conjugate: index reversal j -> -j mod c.
  CyclotomicElement conjugate() const;
  /// True if coeffs[j] == coeffs[-j mod c] for every j, which makes the value visibly real.
  bool is_symmetric() const;
  /// Image under the ring map zeta_c -> 1, i.e. the coefficient sum.
  std::int64_t coefficient_sum() const;

  /// Real part sum_j coeffs[j] cos(2 pi j / c) as a Ball.
  Ball real_value(mpfr_prec_t prec = kDefaultPrecision) const;
  Ball imag_value(mpfr_prec_t prec = kDefaultPrecision) const;

  bool operator==(const CyclotomicElement& other) const = default;
};

/// c-th cyclotomic polynomial, computed by exact division of x^c - 1 by
/// Phi_d for the proper divisors d of c (non-squarefree c via
/// Phi_c(x) = Phi_rad(x^{c/rad})). Results are cached; thread safe.
const IntPolynomial& cyclotomic_polynomial(std::int64_t c);

/// Exact zero test: true iff sum_j coeffs[j] x^j is divisible by Phi_c.
bool is_zero_exact(const CyclotomicElement& e);

/// Same value viewed in Z[zeta_L] for a multiple L of e.modulus (index dilation).
CyclotomicElement embed(const CyclotomicElement& e, std::int64_t L);

/// Product in Z[x]/(x^c - 1); both factors must share the modulus.
CyclotomicElement multiply(const CyclotomicElement& a, const CyclotomicElement& b);
CyclotomicElement subtract(const CyclotomicElement& a, const CyclotomicElement& b);

/// Product of elements with arbitrary moduli, computed in the lcm ring.
CyclotomicElement multiply_all(const std::vector<CyclotomicElement>& factors);

}  // namespace sttrace
