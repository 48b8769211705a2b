#pragma once

#include <cstdint>
#include <vector>

namespace sttrace {

struct PrimePower {
  std::int64_t prime;
  int exponent;
  std::int64_t value;  // prime^exponent
};

/// Nonnegative remainder of a modulo m (m >= 1).
std::int64_t mod(std::int64_t a, std::int64_t m);
std::int64_t gcd(std::int64_t a, std::int64_t b);
/// Inverse of a modulo m; throws NotCoprime when gcd(a, m) != 1. For m = 1 returns 0.
std::int64_t mod_inverse(std::int64_t a, std::int64_t m);
std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m);
std::int64_t powmod(std::int64_t base, std::uint64_t exp, std::int64_t m);
/// Exact integer power; throws Overflow if the result does not fit.
std::int64_t ipow(std::int64_t base, unsigned exp);

bool is_prime(std::int64_t n);
/// Prime factorization sorted by ascending prime.
std::vector<PrimePower> factorize(std::int64_t n);
std::int64_t euler_phi(std::int64_t n);
int mobius(std::int64_t n);

/// Jacobi symbol (a/b) for odd b >= 1.
int jacobi_symbol(std::int64_t a, std::int64_t b);

/// A square root of a modulo q^beta for an odd prime q with gcd(a, q) = 1:
/// Tonelli-Shanks modulo q, then Hensel lifting. The canonical representative
/// is the smaller of the two roots r and q^beta - r. Throws NoSquareRoot.
std::int64_t sqrt_mod_prime_power(std::int64_t a, std::int64_t q, int beta);

}  // namespace sttrace
