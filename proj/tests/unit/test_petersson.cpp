#include <gtest/gtest.h>

#include <cmath>

#include "../oracles/decimal.hpp"
#include "../oracles/frozen_values.hpp"
#include "sttrace/error.hpp"
#include "sttrace/kloosterman.hpp"
#include "sttrace/number_theory.hpp"
#include "sttrace/petersson.hpp"

using namespace sttrace;

TEST(Petersson, LevelOneWeightTwelve) {
  const PeterssonValue v = delta_truncated(12, 1, 1, 1, 40, 192);
  EXPECT_EQ(v.delta_term, 1);
  EXPECT_TRUE(v.value.overlaps(oracle::decimal(frozen::kDelta12, 29)));
  EXPECT_LT(v.tail_bound, 1e-9);
  EXPECT_GE(v.value.rad_double(), v.tail_bound);
  EXPECT_EQ(v.terms.size(), 39u);
}

TEST(Petersson, WindowValueMatchesOracle) {
  const PeterssonValue v = delta_truncated(68, 5, 1, 729, default_truncation(68, 5, 1, 729), 192);
  EXPECT_EQ(v.delta_term, 0);
  EXPECT_TRUE(v.value.overlaps(oracle::decimal(frozen::kDelta68, 29)));
}

TEST(Petersson, TailShrinksAndValuesNest) {
  double prev = INFINITY;
  Ball outer = delta_truncated(30, 3, 1, 25, 4, 192).value;
  for (long B : {4L, 6L, 10L, 20L, 40L}) {
    const PeterssonValue v = delta_truncated(30, 3, 1, 25, B, 192);
    EXPECT_LE(v.tail_bound, prev);
    prev = v.tail_bound;
    Ball widened = outer;
    widened.widen(1e-40);
    EXPECT_TRUE(widened.contains(v.value)) << B;
    outer = v.value;
  }
}

TEST(Petersson, FirstTermDominatesInWindow) {
  // p = 5, N = 3, n = 1: k the even integer nearest 4 pi 5 / 3 + 1.
  const long k = 2 * std::lround((4 * M_PI * 5 / 3 + 1) / 2);
  ASSERT_TRUE(in_window(k, 3, 1, 25));
  const PeterssonValue small = delta_truncated(k, 3, 1, 25, 2, 192);
  const PeterssonValue big = delta_truncated(k, 3, 1, 25, 50, 192);
  EXPECT_TRUE(small.value.overlaps(big.value));
  const double first = big.terms.front().contribution.mid_double();
  EXPECT_GT(std::fabs(first), 10 * std::fabs(big.value.mid_double() - first));
}

TEST(Petersson, VanishingLeadingSum) {
  // S(1, 1, 8) = 0, so Delta_{k,8}(1,1) - 1 is below the envelope.
  const AsymptoticCheck a = asymptotic_check(30, 8, 1, 1, 128, 5.0);
  EXPECT_TRUE(a.main_term.contains(0.0));
  EXPECT_TRUE(a.value.value.overlaps(Ball::from_int(1, 128)) ||
              std::fabs(a.value.value.mid_double() - 1) < a.error_envelope);
}

TEST(Petersson, SignFollowsWeight) {
  // b = 1 term carries (-1)^{k/2}.
  const PeterssonValue v28 = delta_truncated(28, 1, 1, 1, 2, 128);
  const PeterssonValue v30 = delta_truncated(30, 1, 1, 1, 2, 128);
  EXPECT_GT(v28.terms[0].contribution.mid_double(), 0);
  EXPECT_LT(v30.terms[0].contribution.mid_double(), 0);
}

TEST(Petersson, AsymptoticCheckOnWindow) {
  // p = 5, N = 3 with n = p^4 (the n = 1 weight 22 is below 28).
  const long k = 2 * std::lround((4 * M_PI * 25 / 3 + 1) / 2);
  const AsymptoticCheck a = asymptotic_check(k, 3, 1, 625, 192, 5.0);
  EXPECT_TRUE(a.window_ok);
  EXPECT_TRUE(a.within_envelope);
  EXPECT_GT(a.scaled_gap, 0.15);
  EXPECT_NEAR(std::log(error_envelope(101)) / 100 + std::log(100.0) / 300, 1 - 4.0 / 9 - std::log(9.0 / 5), 1e-12);
}

TEST(Petersson, SharperExponentForLargeWeights) {
  const double proven = 1 - 4.0 / 9 - std::log(9.0 / 5);
  for (auto [p, N, j] : {std::tuple{3L, 5L, 4}, {3L, 4L, 4}, {5L, 3L, 3}, {3L, 5L, 5}}) {
    const long k = 2 * std::lround((4 * M_PI * std::pow(p, j) / N + 1) / 2);
    ASSERT_GE(k, 200);
    const AsymptoticCheck a = asymptotic_check(k, N, 1, ipow(p, 2 * j), 192, 5.0);
    EXPECT_LE(std::log(a.remainder.mag_upper_double()) / (k - 1), proven + 0.01) << k;
  }
}

TEST(Petersson, SmallSumSplit) {
  const auto [h0, l0] = small_sum_check(3, 5, 0, 8, 128);
  EXPECT_TRUE(h0.is_exact());
  EXPECT_TRUE(h0.contains(0.0));
  const long k = 2 * std::lround((4 * M_PI * 125 / 3 + 1) / 2);
  const auto [h, l] = small_sum_check(5, 3, 1, k, 192);
  EXPECT_LT(h.mag_upper_double(), 1e-20);
  EXPECT_GT((l.mag_lower_double()) * std::cbrt(k - 1.0), 0.15);
  try {
    small_sum_check(3, 5, 2, 100, 128);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::WindowViolation);
  }
  EXPECT_THROW(small_sum_check(3, 6, 1, 100, 128), Error);
}

TEST(Petersson, Errors) {
  EXPECT_THROW(delta_truncated(11, 1, 1, 1, 4, 64), Error);
  EXPECT_THROW(delta_truncated(2, 1, 1, 1, 4, 64), Error);
  EXPECT_THROW(delta_truncated(12, 1, 1, 1, 1, 64), Error);
  try {
    delta_truncated(12, 1, 1, 1000, 2, 64);  // x_B far above 1
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TailNotCertifiable);
  }
  EXPECT_THROW(asymptotic_check(26, 1, 1, 1, 64, 5), Error);
  EXPECT_FALSE(in_window(100, 1, 1, 1));
  EXPECT_EQ(default_truncation(12, 1, 1, 1), 10);
}
