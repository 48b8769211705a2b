#include "sttrace/cyclotomic.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>

#include "sttrace/error.hpp"
#include "sttrace/number_theory.hpp"

namespace sttrace {

CyclotomicElement::CyclotomicElement(std::int64_t c) : modulus(c) {
  if (c < 1) throw Error(ErrorCode::InvalidModulus, "cyclotomic modulus must be positive");
  coeffs.assign(static_cast<std::size_t>(c), 0);
}

void CyclotomicElement::add_root(std::int64_t exponent, std::int64_t count) {
  coeffs[static_cast<std::size_t>(mod(exponent, modulus))] += count;
}

CyclotomicElement CyclotomicElement::conjugate() const {
  CyclotomicElement out(modulus);
  for (std::int64_t j = 0; j < modulus; ++j) {
    out.coeffs[static_cast<std::size_t>(mod(-j, modulus))] = coeffs[static_cast<std::size_t>(j)];
  }
  return out;
}

bool CyclotomicElement::is_symmetric() const { return conjugate().coeffs == coeffs; }

std::int64_t CyclotomicElement::coefficient_sum() const {
  return std::accumulate(coeffs.begin(), coeffs.end(), std::int64_t{0});
}

namespace {

Ball trig_sum(const CyclotomicElement& e, mpfr_prec_t prec, bool imaginary) {
  Ball total = Ball::from_int(0, prec);
  const Ball two_pi_over_c = pi(prec) * 2 / e.modulus;
  for (std::int64_t j = 0; j < e.modulus; ++j) {
    const std::int64_t k = e.coeffs[static_cast<std::size_t>(j)];
    if (k == 0) continue;
    const Ball angle = two_pi_over_c * j;
    total += (imaginary ? sin(angle) : cos(angle)) * k;
  }
  return total;
}

}  // namespace

Ball CyclotomicElement::real_value(mpfr_prec_t prec) const { return trig_sum(*this, prec, false); }
Ball CyclotomicElement::imag_value(mpfr_prec_t prec) const { return trig_sum(*this, prec, true); }

namespace {

std::int64_t radical(std::int64_t c) {
  std::int64_t r = 1;
  for (const auto& pp : factorize(c)) r *= pp.prime;
  return r;
}

IntPolynomial dilate(const IntPolynomial& f, std::int64_t factor) {
  std::vector<mpz_class> out(static_cast<std::size_t>(f.degree() * factor) + 1);
  for (int i = 0; i <= f.degree(); ++i) out[static_cast<std::size_t>(i * factor)] = f.coeff(i);
  return IntPolynomial(std::move(out));
}

IntPolynomial compute_cyclotomic(std::int64_t c) {
  const std::int64_t r = radical(c);
  if (r != c) return dilate(cyclotomic_polynomial(r), c / r);
  IntPolynomial f = IntPolynomial::monomial(1, static_cast<int>(c)) - IntPolynomial{1};
  for (std::int64_t d = 1; d < c; ++d) {
    if (c % d != 0) continue;
    auto [q, rem] = f.divmod_monic(cyclotomic_polynomial(d));
    if (!rem.is_zero()) throw Error(ErrorCode::InvalidArgument, "inexact cyclotomic division");
    f = std::move(q);
  }
  return f;
}

struct SparseCyclotomic {
  int degree;
  std::vector<std::pair<int, std::int64_t>> terms;  // (power, coefficient), leading term excluded
};

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

std::map<std::int64_t, std::unique_ptr<IntPolynomial>>& dense_cache() {
  static std::map<std::int64_t, std::unique_ptr<IntPolynomial>> cache;
  return cache;
}

std::map<std::int64_t, std::unique_ptr<SparseCyclotomic>>& sparse_cache() {
  static std::map<std::int64_t, std::unique_ptr<SparseCyclotomic>> cache;
  return cache;
}

const SparseCyclotomic& sparse_cyclotomic(std::int64_t c) {
  {
    std::lock_guard<std::mutex> lock(cache_mutex());
    auto it = sparse_cache().find(c);
    if (it != sparse_cache().end()) return *it->second;
  }
  const IntPolynomial& phi = cyclotomic_polynomial(c);
  auto sparse = std::make_unique<SparseCyclotomic>();
  sparse->degree = phi.degree();
  for (int i = 0; i < phi.degree(); ++i) {
    const mpz_class coeff = phi.coeff(i);
    if (coeff == 0) continue;
    if (!coeff.fits_slong_p()) throw Error(ErrorCode::Overflow, "cyclotomic coefficient exceeds 64 bits");
    sparse->terms.emplace_back(i, coeff.get_si());
  }
  std::lock_guard<std::mutex> lock(cache_mutex());
  auto [it, inserted] = sparse_cache().emplace(c, std::move(sparse));
  return *it->second;
}

// Remainder of f modulo a monic sparse divisor in int64; nullopt on overflow.
std::optional<bool> remainder_is_zero_int64(std::vector<std::int64_t> f, const SparseCyclotomic& phi) {
  const int d = phi.degree;
  for (int i = static_cast<int>(f.size()) - 1; i >= d; --i) {
    const std::int64_t q = f[static_cast<std::size_t>(i)];
    if (q == 0) continue;
    f[static_cast<std::size_t>(i)] = 0;
    for (const auto& [power, coeff] : phi.terms) {
      std::int64_t prod = 0;
      auto& slot = f[static_cast<std::size_t>(i - d + power)];
      if (__builtin_mul_overflow(q, coeff, &prod) || __builtin_sub_overflow(slot, prod, &slot)) return std::nullopt;
    }
  }
  for (int i = 0; i < d && i < static_cast<int>(f.size()); ++i) {
    if (f[static_cast<std::size_t>(i)] != 0) return false;
  }
  return true;
}

}  // namespace

const IntPolynomial& cyclotomic_polynomial(std::int64_t c) {
  if (c < 1) throw Error(ErrorCode::InvalidModulus, "cyclotomic index must be positive");
  {
    std::lock_guard<std::mutex> lock(cache_mutex());
    auto it = dense_cache().find(c);
    if (it != dense_cache().end()) return *it->second;
  }
  auto poly = std::make_unique<IntPolynomial>(compute_cyclotomic(c));
  std::lock_guard<std::mutex> lock(cache_mutex());
  auto [it, inserted] = dense_cache().emplace(c, std::move(poly));
  return *it->second;
}

bool is_zero_exact(const CyclotomicElement& e) {
  bool all_zero = true;
  for (std::int64_t v : e.coeffs) all_zero = all_zero && v == 0;
  if (all_zero) return true;
  if (auto fast = remainder_is_zero_int64(e.coeffs, sparse_cyclotomic(e.modulus))) return *fast;
  std::vector<mpz_class> big(e.coeffs.begin(), e.coeffs.end());
  auto [q, rem] = IntPolynomial(std::move(big)).divmod_monic(cyclotomic_polynomial(e.modulus));
  return rem.is_zero();
}

CyclotomicElement embed(const CyclotomicElement& e, std::int64_t L) {
  if (L < 1 || L % e.modulus != 0) throw Error(ErrorCode::InvalidModulus, "embedding target must be a multiple of the modulus");
  const std::int64_t step = L / e.modulus;
  CyclotomicElement out(L);
  for (std::int64_t j = 0; j < e.modulus; ++j) out.coeffs[static_cast<std::size_t>(j * step)] = e.coeffs[static_cast<std::size_t>(j)];
  return out;
}

CyclotomicElement multiply(const CyclotomicElement& a, const CyclotomicElement& b) {
  if (a.modulus != b.modulus) throw Error(ErrorCode::InvalidModulus, "multiply requires equal moduli");
  const std::int64_t c = a.modulus;
  CyclotomicElement out(c);
  std::vector<std::pair<std::int64_t, std::int64_t>> nz;
  for (std::int64_t j = 0; j < c; ++j) {
    if (b.coeffs[static_cast<std::size_t>(j)] != 0) nz.emplace_back(j, b.coeffs[static_cast<std::size_t>(j)]);
  }
  for (std::int64_t i = 0; i < c; ++i) {
    const std::int64_t ai = a.coeffs[static_cast<std::size_t>(i)];
    if (ai == 0) continue;
    for (const auto& [j, bj] : nz) {
      std::int64_t prod = 0;
      auto& slot = out.coeffs[static_cast<std::size_t>((i + j) % c)];
      if (__builtin_mul_overflow(ai, bj, &prod) || __builtin_add_overflow(slot, prod, &slot)) {
        throw Error(ErrorCode::Overflow, "cyclotomic product overflows 64 bits");
      }
    }
  }
  return out;
}

CyclotomicElement subtract(const CyclotomicElement& a, const CyclotomicElement& b) {
  if (a.modulus != b.modulus) throw Error(ErrorCode::InvalidModulus, "subtract requires equal moduli");
  CyclotomicElement out = a;
  for (std::size_t j = 0; j < out.coeffs.size(); ++j) out.coeffs[j] -= b.coeffs[j];
  return out;
}

CyclotomicElement multiply_all(const std::vector<CyclotomicElement>& factors) {
  std::int64_t L = 1;
  for (const auto& f : factors) L = std::lcm(L, f.modulus);
  CyclotomicElement acc = embed(CyclotomicElement::one(), L);
  for (const auto& f : factors) acc = multiply(acc, embed(f, L));
  return acc;
}

}  // namespace sttrace
