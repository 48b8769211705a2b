#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sttrace/calibration.hpp"
#include "sttrace/chebyshev.hpp"
#include "sttrace/error.hpp"

using namespace sttrace;

namespace {
IntPolynomial poly(std::initializer_list<long> c) {
  IntPolynomial p;
  int d = 0;
  for (long v : c) p = p + IntPolynomial::monomial(v, d++);
  return p;
}
}  // namespace

TEST(Chebyshev, SmallPolynomials) {
  EXPECT_EQ(chebyshev_x(0), poly({1}));
  EXPECT_EQ(chebyshev_x(2), poly({-1, 0, 1}));
  EXPECT_EQ(chebyshev_x(4), poly({1, 0, -3, 0, 1}));
  EXPECT_EQ(poly_y(0), poly({1}));
  EXPECT_EQ(poly_y(1), poly({0, 1}));
  EXPECT_EQ(poly_y(2), poly({-1, -1, 1}));
  EXPECT_EQ(poly_q(0), poly({1}));
  EXPECT_EQ(poly_q(1), poly({0, 1}));
  EXPECT_EQ(poly_q(3), poly_y(1) + poly_y(3));
  EXPECT_EQ(poly_q(3), poly({1, 0, -2, 1}));
  EXPECT_THROW(chebyshev_x(-1), Error);
}

TEST(Chebyshev, ValuesAtTwo) {
  for (int m = 0; m <= 50; ++m) EXPECT_EQ(chebyshev_x(2 * m).evaluate(mpz_class(2)), 2 * m + 1);
}

TEST(Chebyshev, CompositionIdentity) {
  for (int m = 1; m <= 50; ++m) EXPECT_TRUE(verify_composition(m)) << m;
  EXPECT_EQ(poly_y(2).compose(chebyshev_x(2)), chebyshev_x(4));
}

TEST(Chebyshev, QRecurrence) {
  for (int m = 1; m <= 30; ++m) {
    EXPECT_EQ(poly_q(2 * m + 1) - poly_q(2 * m - 1), poly_y(2 * m + 1));
    EXPECT_EQ(poly_q(2 * m) - poly_q(2 * m - 2), poly_y(2 * m));
  }
}

TEST(Chebyshev, TrigonometricClosedForm) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.05, 3.1);
  for (int i = 0; i < 20; ++i) {
    const Ball t = Ball::from_double(u(rng), 128);
    for (int n = 0; n <= 30; ++n) {
      const Ball lhs = chebyshev_x(n).evaluate(cos(t) * 2) * sin(t);
      EXPECT_TRUE(lhs.overlaps(sin(t * (n + 1)))) << n;
    }
  }
}

TEST(Chebyshev, DerivativeCaps) {
  const Calibration cal = default_calibration();
  const DerivativeBounds one = derivative_bound_check(1);
  EXPECT_DOUBLE_EQ(one.q_derivative_ratio, 1.0);
  EXPECT_DOUBLE_EQ(one.q_endpoint_ratio, 3.0);
  for (int n : {1, 2, 5, 10, 20, 40}) {
    const DerivativeBounds d = derivative_bound_check(n);
    EXPECT_LE(d.q_derivative_ratio, cal.q_derivative_cap) << n;
    EXPECT_LE(d.q_endpoint_ratio, cal.q_endpoint_cap) << n;
    EXPECT_LE(d.x_derivative_ratio, cal.x_derivative_cap) << n;
  }
  EXPECT_THROW(derivative_bound_check(0), Error);
}

TEST(Chebyshev, EndpointDerivativeGrowth) {
  // X_m'(2) = m(m+1)(m+2)/6: the sup of |X_{2n}'| grows like n^3.
  for (int m = 1; m <= 60; ++m) {
    const mpz_class expected = mpz_class(m) * (m + 1) * (m + 2) / 6;
    EXPECT_EQ(chebyshev_x(m).derivative().evaluate(mpz_class(2)), expected);
  }
}
