#include <gtest/gtest.h>

#include <random>

#include "../oracles/kloosterman_oracle.hpp"
#include "sttrace/cyclotomic.hpp"
#include "sttrace/error.hpp"
#include "sttrace/kloosterman.hpp"
#include "sttrace/number_theory.hpp"

using namespace sttrace;

TEST(Kloosterman, BruteForceMatchesComplexOracle) {
  std::mt19937_64 rng(11);
  for (std::int64_t c = 1; c <= 120; ++c) {
    std::uniform_int_distribution<std::int64_t> pick(0, 3 * c);
    for (int t = 0; t < 3; ++t) {
      const std::int64_t m = pick(rng), n = pick(rng);
      const KloostermanResult r = brute_force_kloosterman(m, n, c, 128);
      const auto o = oracle::kloosterman(m, n, c);
      EXPECT_NEAR(r.numeric.mid_double(), static_cast<double>(o.real()), 1e-9 * c);
      EXPECT_NEAR(static_cast<double>(o.imag()), 0.0, 1e-9 * c);
      EXPECT_TRUE(r.numeric.overlaps(r.exact.real_value(128)));
      EXPECT_TRUE(r.exact.is_symmetric());
    }
  }
}

TEST(Kloosterman, SmallTable) {
  EXPECT_TRUE(brute_force_kloosterman(1, 1, 1).numeric.contains(1.0));
  EXPECT_TRUE(brute_force_kloosterman(1, 1, 2).numeric.contains(1.0));
  EXPECT_TRUE(brute_force_kloosterman(1, 1, 4).numeric.contains(-2.0));
  EXPECT_TRUE(brute_force_kloosterman(1, 1, 8).certificate.is_zero());
  // Odd squares are 1 mod 8, so S(1, p^{2n}, 8) vanishes.
  EXPECT_TRUE(brute_force_kloosterman(1, 9, 8).certificate.is_zero());
  EXPECT_THROW(kloosterman_exact(1, 1, 0), Error);
}

TEST(Kloosterman, SymmetryAndTwisting) {
  for (std::int64_t c : {7, 12, 25, 36}) {
    for (std::int64_t a = 1; a < c; ++a) {
      if (gcd(a, c) != 1) continue;
      // S(m, n, c) = S(n, m, c) = S(am, a^{-1} n, c)
      const Ball s = brute_force_kloosterman(2, 3, c).numeric;
      EXPECT_TRUE(s.overlaps(brute_force_kloosterman(3, 2, c).numeric));
      EXPECT_TRUE(s.overlaps(brute_force_kloosterman(2 * a, 3 * mod_inverse(a, c), c).numeric));
    }
  }
}

TEST(Kloosterman, SalieMatchesBruteForce) {
  for (std::int64_t q : {3, 5, 7, 11}) {
    for (int beta = 2; ipow(q, beta) <= 1500; ++beta) {
      const std::int64_t Q = ipow(q, beta);
      for (std::int64_t a : {1, 2, 4, 7}) {
        if (a % q == 0) continue;
        for (std::int64_t b = 1; b < 40; ++b) {
          if (b % q == 0 || jacobi_symbol(mod(a * b, q), q) != 1) continue;
          EXPECT_TRUE(salie_evaluate(a, b, q, beta).overlaps(brute_force_kloosterman(a, b, Q).numeric))
              << a << " " << b << " " << Q;
        }
      }
    }
  }
}

TEST(Kloosterman, SalieErrors) {
  EXPECT_THROW(salie_evaluate(1, 1, 9, 2), Error);
  EXPECT_THROW(salie_evaluate(1, 1, 5, 1), Error);
  EXPECT_THROW(salie_evaluate(5, 1, 5, 2), Error);
  try {
    salie_evaluate(1, 2, 3, 2);  // 2 is not a square mod 3
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoSquareRoot);
  }
  // ... and the sum itself vanishes in that case.
  EXPECT_TRUE(brute_force_kloosterman(1, 2, 9).certificate.is_zero());
}

TEST(Kloosterman, DecompositionShape) {
  const DecompositionPlan plan = decompose(7, 1, 2 * 9 * 5);
  ASSERT_EQ(plan.factors.size(), 3u);
  EXPECT_EQ(plan.factors[0].modulus, 2);
  EXPECT_EQ(plan.factors[1].modulus, 9);
  EXPECT_EQ(plan.factors[2].modulus, 5);
  EXPECT_EQ(plan.multipliers.front(), 1);
  EXPECT_TRUE(verify_decomposition(plan));
  EXPECT_TRUE(verify_decomposition(decompose(3, 2, 1)));
  EXPECT_THROW(decompose(3, 1, 6), Error);
}

TEST(Kloosterman, Certificates) {
  const Certificate prime = nonvanishing_certificate(3, 1, 5);
  EXPECT_EQ(prime.name(), "NonzeroByPrimeReduction");
  EXPECT_NE(prime.describe().find("residue=4"), std::string::npos);
  EXPECT_EQ(nonvanishing_certificate(3, 1, 25).name(), "NonzeroBySalie");
  EXPECT_EQ(nonvanishing_certificate(3, 1, 4).name(), "NonzeroByTable");
  EXPECT_EQ(nonvanishing_certificate(5, 1, 12).name(), "NonzeroByProduct");
  EXPECT_TRUE(nonvanishing_certificate(3, 1, 8).is_zero());
  EXPECT_TRUE(nonvanishing_certificate(3, 1, 1).is_nonzero());
  // p = 7, N = 4 and p = 5, N = 6 carry certificates.
  EXPECT_TRUE(nonvanishing_certificate(7, 2, 4).is_nonzero());
  EXPECT_TRUE(nonvanishing_certificate(5, 3, 6).is_nonzero());
}
