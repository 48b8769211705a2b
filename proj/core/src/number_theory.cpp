#include "sttrace/number_theory.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "sttrace/error.hpp"

namespace sttrace {

namespace {
__extension__ using Int128 = __int128;
}  // namespace

std::int64_t mod(std::int64_t a, std::int64_t m) {
  if (m < 1) throw Error(ErrorCode::InvalidModulus, "modulus must be positive");
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t gcd(std::int64_t a, std::int64_t b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  if (m == 1) return 0;
  std::int64_t old_r = mod(a, m), r = m;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) {
    throw Error(ErrorCode::NotCoprime, std::to_string(a) + " is not invertible modulo " + std::to_string(m));
  }
  return mod(old_s, m);
}

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>(static_cast<Int128>(mod(a, m)) * mod(b, m) % m);
}

std::int64_t powmod(std::int64_t base, std::uint64_t exp, std::int64_t m) {
  std::int64_t result = mod(1, m);
  std::int64_t b = mod(base, m);
  while (exp > 0) {
    if (exp & 1U) result = mulmod(result, b, m);
    b = mulmod(b, b, m);
    exp >>= 1U;
  }
  return result;
}

std::int64_t ipow(std::int64_t base, unsigned exp) {
  std::int64_t result = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (__builtin_mul_overflow(result, base, &result)) {
      throw Error(ErrorCode::Overflow, "integer power overflows 64 bits");
    }
  }
  return result;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  // Deterministic Miller-Rabin for 64-bit inputs.
  std::int64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::int64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::int64_t x = powmod(a, static_cast<std::uint64_t>(d), n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<PrimePower> factorize(std::int64_t n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "factorize requires n >= 1");
  std::vector<PrimePower> out;
  for (std::int64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    PrimePower pp{p, 0, 1};
    while (n % p == 0) {
      n /= p;
      ++pp.exponent;
      pp.value *= p;
    }
    out.push_back(pp);
  }
  if (n > 1) out.push_back({n, 1, n});
  return out;
}

std::int64_t euler_phi(std::int64_t n) {
  std::int64_t phi = n;
  for (const auto& pp : factorize(n)) phi = phi / pp.prime * (pp.prime - 1);
  return phi;
}

int mobius(std::int64_t n) {
  int sign = 1;
  for (const auto& pp : factorize(n)) {
    if (pp.exponent > 1) return 0;
    sign = -sign;
  }
  return sign;
}

int jacobi_symbol(std::int64_t a, std::int64_t b) {
  if (b < 1 || (b & 1) == 0) throw Error(ErrorCode::InvalidModulus, "Jacobi symbol needs an odd positive modulus");
  a = mod(a, b);
  int result = 1;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      const std::int64_t r = b & 7;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, b);
    if ((a & 3) == 3 && (b & 3) == 3) result = -result;
    a %= b;
  }
  return b == 1 ? result : 0;
}

namespace {

std::int64_t tonelli_shanks(std::int64_t a, std::int64_t q) {
  a = mod(a, q);
  if (q == 2) return a;
  if (powmod(a, static_cast<std::uint64_t>((q - 1) / 2), q) != 1) {
    throw Error(ErrorCode::NoSquareRoot, std::to_string(a) + " is a non-residue modulo " + std::to_string(q));
  }
  std::int64_t s = 0, d = q - 1;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  if (s == 1) return powmod(a, static_cast<std::uint64_t>((q + 1) / 4), q);
  std::int64_t z = 2;
  while (powmod(z, static_cast<std::uint64_t>((q - 1) / 2), q) != q - 1) ++z;
  std::int64_t m = s;
  std::int64_t c = powmod(z, static_cast<std::uint64_t>(d), q);
  std::int64_t t = powmod(a, static_cast<std::uint64_t>(d), q);
  std::int64_t r = powmod(a, static_cast<std::uint64_t>((d + 1) / 2), q);
  while (t != 1) {
    std::int64_t i = 0, t2 = t;
    while (t2 != 1) {
      t2 = mulmod(t2, t2, q);
      ++i;
    }
    std::int64_t b = c;
    for (std::int64_t j = 0; j < m - i - 1; ++j) b = mulmod(b, b, q);
    m = i;
    c = mulmod(b, b, q);
    t = mulmod(t, c, q);
    r = mulmod(r, b, q);
  }
  return r;
}

}  // namespace

std::int64_t sqrt_mod_prime_power(std::int64_t a, std::int64_t q, int beta) {
  if (q < 3 || (q & 1) == 0 || !is_prime(q)) throw Error(ErrorCode::InvalidModulus, "modulus base must be an odd prime");
  if (beta < 1) throw Error(ErrorCode::InvalidModulus, "exponent must be positive");
  if (mod(a, q) == 0) throw Error(ErrorCode::InvalidArgument, "argument must be coprime to the modulus");
  std::int64_t r = tonelli_shanks(a, q);
  std::int64_t modulus = q;
  for (int e = 1; e < beta; ++e) {
    const std::int64_t next = modulus * q;
    // r <- r - (r^2 - a) / (2r)  (mod next)
    const std::int64_t f = mod(mulmod(r, r, next) - mod(a, next), next);
    const std::int64_t inv2r = mod_inverse(mulmod(2, r, next), next);
    r = mod(r - mulmod(f, inv2r, next), next);
    modulus = next;
  }
  return std::min(r, modulus - r);
}

}  // namespace sttrace
