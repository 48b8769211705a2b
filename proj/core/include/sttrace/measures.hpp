#pragma once

#include <string>

#include "sttrace/ball.hpp"
#include "sttrace/int_polynomial.hpp"

namespace sttrace {

enum class MeasureKind { MuP, MuInfinity, MuPSquared, MuInfinity2 };

/// One of the four limit measures. MuP and MuInfinity live on [-2, 2],
/// MuPSquared and MuInfinity2 on [-1, 3].
struct MeasureSpec {
  MeasureKind kind = MeasureKind::MuInfinity;
  long p = 0;

  static MeasureSpec mu_p(long p);
  static MeasureSpec mu_infinity() { return {MeasureKind::MuInfinity, 0}; }
  static MeasureSpec mu_p_squared(long p);
  static MeasureSpec mu_infinity_2() { return {MeasureKind::MuInfinity2, 0}; }
  /// Parses "mu_inf", "mu_inf2", "mu_p:5", "mu_p2:5".
  static MeasureSpec parse(const std::string& text);

  long support_lo() const;
  long support_hi() const;
  std::string name() const;
};

/// Density at x; zero outside the support. Throws DomainError at the
/// singular endpoint x = -1 of the [-1, 3] measures.
Ball density(const MeasureSpec& mu, const Ball& x);

/// mu((-inf, x]) from closed-form antiderivatives, monotone in x.
Ball cdf(const MeasureSpec& mu, const Ball& x);

/// mu([lo, hi])
Ball interval_mass(const MeasureSpec& mu, const Ball& lo, const Ball& hi);

/// Certified integral of a polynomial. After x = 2 cos t (or 1 + 2 cos t) the
/// integrand is 2 pi-periodic; for the infinite-p measures it is a
/// trigonometric polynomial and the equispaced rule is exact, for the p-adic
/// ones it is analytic in a strip and the rule carries an explicit error
/// bound. Throws QuadratureNotConverged when the node cap is reached.
Ball integrate_poly(const IntPolynomial& f, const MeasureSpec& mu, mpfr_prec_t prec);

/// Grid approximation of sup over intervals |mu1(I) - mu2(I)| using
/// `points` equispaced interval endpoints over the union of the supports.
double discrepancy_grid(const MeasureSpec& mu1, const MeasureSpec& mu2, int points);

}  // namespace sttrace
