#include <gtest/gtest.h>

#include <cmath>

#include "sttrace/chebyshev.hpp"
#include "sttrace/error.hpp"
#include "sttrace/measures.hpp"

using namespace sttrace;

namespace {
const IntPolynomial kOne = IntPolynomial::monomial(1, 0);

std::vector<MeasureSpec> all_measures() {
  return {MeasureSpec::mu_infinity(), MeasureSpec::mu_infinity_2(), MeasureSpec::mu_p(3),
          MeasureSpec::mu_p(5),       MeasureSpec::mu_p(7),          MeasureSpec::mu_p_squared(3),
          MeasureSpec::mu_p_squared(11)};
}
}  // namespace

TEST(Measures, Parsing) {
  EXPECT_EQ(MeasureSpec::parse("mu_inf").kind, MeasureKind::MuInfinity);
  EXPECT_EQ(MeasureSpec::parse("mu_inf2").kind, MeasureKind::MuInfinity2);
  EXPECT_EQ(MeasureSpec::parse("mu_p:5").p, 5);
  EXPECT_EQ(MeasureSpec::parse("mu_p2:7").kind, MeasureKind::MuPSquared);
  EXPECT_EQ(MeasureSpec::parse("mu_p2:7").name(), "mu_p2:7");
  EXPECT_THROW(MeasureSpec::parse("mu_p:4"), Error);
  EXPECT_THROW(MeasureSpec::parse("mu_q:5"), Error);
  EXPECT_THROW(MeasureSpec::parse("mu_p:x"), Error);
}

TEST(Measures, MassIsOne) {
  for (const auto& mu : all_measures()) {
    const Ball m = integrate_poly(kOne, mu, 128);
    EXPECT_LT(m.rad_double(), 1e-10) << mu.name();
    EXPECT_TRUE(m.contains(1.0)) << mu.name();
  }
}

TEST(Measures, DensityIsNonnegativeInside) {
  for (const auto& mu : all_measures()) {
    const double lo = mu.support_lo(), hi = mu.support_hi();
    for (int i = 1; i <= 100; ++i) {
      const Ball x = Ball::from_double(lo + (hi - lo) * i / 101.0, 128);
      EXPECT_TRUE(density(mu, x).is_nonnegative()) << mu.name() << " " << i;
    }
    EXPECT_TRUE(density(mu, Ball::from_int(5, 64)).contains(0.0));
  }
}

TEST(Measures, ChebyshevOrthogonality) {
  for (int n = 0; n <= 30; ++n) {
    const Ball v = integrate_poly(chebyshev_x(n), MeasureSpec::mu_infinity(), 128);
    EXPECT_LT(v.rad_double(), 1e-10);
    EXPECT_TRUE(v.contains(n == 0 ? 1.0 : 0.0)) << n;
  }
  for (int n = 0; n <= 10; ++n) {
    const Ball v = integrate_poly(poly_q(2 * n + 1), MeasureSpec::mu_infinity_2(), 128);
    EXPECT_LT(v.rad_double(), 1e-10);
    EXPECT_TRUE(v.contains(0.0)) << n;
  }
}

TEST(Measures, PadicMoments) {
  // Even Chebyshev moments of mu_p are p^{-n}; odd ones vanish by symmetry.
  for (long p : {3L, 5L, 7L}) {
    for (int n = 0; n <= 6; ++n) {
      const Ball v = integrate_poly(chebyshev_x(2 * n), MeasureSpec::mu_p(p), 128);
      EXPECT_TRUE(v.overlaps(Ball::from_rational(1, static_cast<long>(std::pow(p, n)), 128))) << p << " " << n;
      EXPECT_TRUE(integrate_poly(chebyshev_x(2 * n + 1), MeasureSpec::mu_p(p), 128).contains(0.0));
    }
  }
}

TEST(Measures, PushforwardConsistency) {
  // mu_{p^2} is the image of mu_p under x -> x^2 - 1, so its moments of f are those of f(X_2).
  for (long p : {3L, 5L}) {
    for (int m = 0; m <= 5; ++m) {
      const Ball a = integrate_poly(poly_y(m), MeasureSpec::mu_p_squared(p), 128);
      const Ball b = integrate_poly(poly_y(m).compose(chebyshev_x(2)), MeasureSpec::mu_p(p), 128);
      EXPECT_TRUE(a.overlaps(b)) << p << " " << m;
    }
  }
  for (int m = 0; m <= 5; ++m) {
    const Ball a = integrate_poly(poly_y(m), MeasureSpec::mu_infinity_2(), 128);
    const Ball b = integrate_poly(poly_y(m).compose(chebyshev_x(2)), MeasureSpec::mu_infinity(), 128);
    EXPECT_TRUE(a.overlaps(b)) << m;
  }
}

TEST(Measures, DistributionFunction) {
  const mpfr_prec_t P = 128;
  for (const auto& mu : all_measures()) {
    EXPECT_TRUE(cdf(mu, Ball::from_int(mu.support_hi(), P)).contains(1.0));
    EXPECT_TRUE(cdf(mu, Ball::from_int(mu.support_lo(), P)).contains(0.0));
    EXPECT_TRUE(cdf(mu, Ball::from_int(10, P)).contains(1.0));
  }
  EXPECT_TRUE(cdf(MeasureSpec::mu_infinity(), Ball::from_int(0, P)).contains(0.5));
  EXPECT_TRUE(cdf(MeasureSpec::mu_p(5), Ball::from_int(0, P)).contains(0.5));
  // F(1) = 2/3 + sqrt(3) / (4 pi)
  const Ball f1 = cdf(MeasureSpec::mu_infinity(), Ball::from_int(1, P));
  EXPECT_TRUE(f1.overlaps(Ball::from_rational(2, 3, P) + sqrt(Ball::from_int(3, P)) / (pi(P) * 4)));
  // Interval masses agree with quadrature of the density through moments: mu([-2, 2]) = 1.
  EXPECT_TRUE(interval_mass(MeasureSpec::mu_p(3), Ball::from_int(-2, P), Ball::from_int(2, P)).contains(1.0));
}

TEST(Measures, CdfIsMonotone) {
  for (const auto& mu : all_measures()) {
    double prev = -1;
    for (int i = 0; i <= 200; ++i) {
      const double x = mu.support_lo() + 4.0 * i / 200;
      const double v = cdf(mu, Ball::from_double(x, 128)).mid_double();
      EXPECT_GE(v, prev - 1e-15) << mu.name();
      prev = v;
    }
  }
}

TEST(Measures, PadicSquaresApproachLimit) {
  // |mu_{p^2} - mu_{inf,2}| = mu_{inf,2}(x) |x - 1/p| / (p + 1 + 1/p - x): the difference for p
  // vanishes at x = 1/p, so pointwise monotonicity in p only holds away from [0, 0.6].
  double prev_sup = INFINITY;
  for (long p : {3L, 5L, 11L, 101L}) {
    double sup = 0;
    for (int i = 1; i < 400; ++i) {
      const Ball x = Ball::from_double(-1.0 + 4.0 * i / 400, 128);
      sup = std::max(sup, std::fabs((density(MeasureSpec::mu_p_squared(p), x) -
                                     density(MeasureSpec::mu_infinity_2(), x)).mid_double()));
    }
    EXPECT_LT(sup, prev_sup) << p;
    prev_sup = sup;
  }
  for (int i = 1; i < 40; ++i) {
    const double xd = -1.0 + 4.0 * i / 40;
    if (xd >= 0.0 && xd <= 0.6) continue;
    const Ball x = Ball::from_double(xd, 128);
    const Ball limit = density(MeasureSpec::mu_infinity_2(), x);
    double prev = INFINITY;
    for (long p : {3L, 5L, 11L, 101L}) {
      const double d = std::fabs((density(MeasureSpec::mu_p_squared(p), x) - limit).mid_double());
      EXPECT_LT(d, prev) << p << " " << xd;
      prev = d;
    }
  }
  const Ball third = Ball::from_rational(1, 3, 128);
  EXPECT_TRUE((density(MeasureSpec::mu_p_squared(3), third) - density(MeasureSpec::mu_infinity_2(), third)).contains(0.0));
}

TEST(Measures, Discrepancy) {
  EXPECT_DOUBLE_EQ(discrepancy_grid(MeasureSpec::mu_infinity(), MeasureSpec::mu_infinity(), 100), 0.0);
  const double d3 = discrepancy_grid(MeasureSpec::mu_p(3), MeasureSpec::mu_infinity(), 2000);
  const double d101 = discrepancy_grid(MeasureSpec::mu_p(101), MeasureSpec::mu_infinity(), 2000);
  EXPECT_GT(d3, d101);
  EXPECT_GT(d3, 0.1);
  EXPECT_THROW(discrepancy_grid(MeasureSpec::mu_p(3), MeasureSpec::mu_infinity(), 1), Error);
}
