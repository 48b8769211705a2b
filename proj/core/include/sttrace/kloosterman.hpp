#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "sttrace/ball.hpp"
#include "sttrace/cyclotomic.hpp"
#include "sttrace/number_theory.hpp"

namespace sttrace {

struct Certificate;

struct ZeroExact {};
/// The exact zero test failed.
struct NonzeroByCyclotomic {};
/// Odd prime modulus: the image of the sum under zeta -> 1 in F_q is q - 1.
struct NonzeroByPrimeReduction {
  std::int64_t prime;
  std::int64_t residue;
};
/// Odd prime power modulus: the Salie closed form, bounded away from zero.
struct NonzeroBySalie {
  Ball value;
};
/// Modulus 2 or 4, where the sum is a small known integer.
struct NonzeroByTable {
  std::int64_t modulus;
  std::int64_t value;
};
/// Composite level: one certificate per prime-power factor of the decomposition.
struct NonzeroByProduct {
  std::vector<Certificate> factors;
};

struct Certificate {
  std::variant<ZeroExact, NonzeroByCyclotomic, NonzeroByPrimeReduction, NonzeroBySalie, NonzeroByTable,
               NonzeroByProduct>
      kind;

  bool is_zero() const { return std::holds_alternative<ZeroExact>(kind); }
  bool is_nonzero() const { return !is_zero(); }
  /// Short tag, e.g. "NonzeroBySalie".
  std::string name() const;
  /// Tag plus payload, e.g. "NonzeroByPrimeReduction(q=5,residue=4)".
  std::string describe() const;
};

struct KloostermanResult {
  std::int64_t m = 0;
  std::int64_t n = 0;
  std::int64_t c = 1;
  CyclotomicElement exact;
  Ball numeric;
  Certificate certificate;
};

/// Exact element sum_{x mod c, (x,c)=1} zeta_c^{m x + n xbar}.
CyclotomicElement kloosterman_exact(std::int64_t m, std::int64_t n, std::int64_t c);

/// S(m, n, c) by enumeration. S(m, n, 1) = 1.
KloostermanResult brute_force_kloosterman(std::int64_t m, std::int64_t n, std::int64_t c,
                                          mpfr_prec_t prec = kDefaultPrecision);

/// Closed form 2 (l'/q^beta) sqrt(q^beta) Re(eps e^{4 pi i l'/q^beta}) for S(a, b, q^beta),
/// where l'^2 = ab mod q^beta and eps = 1 or i as q^beta = 1 or 3 mod 4.
/// The value does not depend on which square root l' is used.
Ball salie_evaluate(std::int64_t a, std::int64_t b, std::int64_t q, int beta,
                    mpfr_prec_t prec = kDefaultPrecision);

struct KloostermanFactor {
  std::int64_t a;
  std::int64_t b;
  std::int64_t modulus;
};

/// Factorization S(1, p^{2n}, N) = prod_i S(a_i, b_i, l_i) over the prime-power
/// factors l_i of N, taken in ascending order of the prime.
struct DecompositionPlan {
  std::int64_t p = 0;
  int n = 0;
  std::int64_t level = 0;
  std::vector<PrimePower> prime_powers;
  std::vector<std::int64_t> cofactors;    // c_i = N / (l_1 ... l_i)
  std::vector<std::int64_t> multipliers;  // m_0 = 1, m_i = m_{i-1} * inverse(l_i mod c_i)
  std::vector<KloostermanFactor> factors;
};

DecompositionPlan decompose(std::int64_t p, int n, std::int64_t N);

/// Exact check that the product of the factor sums equals S(1, p^{2n}, N).
bool verify_decomposition(const DecompositionPlan& plan);

Certificate nonvanishing_certificate(std::int64_t p, int n, std::int64_t N);

}  // namespace sttrace
