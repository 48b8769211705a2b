#pragma once

#include <gmpxx.h>

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "sttrace/ball.hpp"

namespace sttrace {

/// Dense polynomial with arbitrary-size integer coefficients; coeffs[i] is
/// the coefficient of x^i. The representation is kept normalized: the
/// leading coefficient is nonzero, and the zero polynomial has no
/// coefficients (degree -1).
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<mpz_class> coeffs);
  IntPolynomial(std::initializer_list<long> coeffs);

  static IntPolynomial monomial(long coefficient, int degree);
  static IntPolynomial x() { return monomial(1, 1); }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  /// Coefficient of x^i; zero beyond the degree.
  mpz_class coeff(int i) const;
  const std::vector<mpz_class>& coeffs() const { return coeffs_; }
  const mpz_class& leading() const { return coeffs_.back(); }

  IntPolynomial derivative() const;
  /// this(inner(x))
  IntPolynomial compose(const IntPolynomial& inner) const;

  mpz_class evaluate(const mpz_class& x) const;
  /// Horner evaluation in Ball arithmetic.
  Ball evaluate(const Ball& x) const;

  /// Exact Euclidean division by a monic divisor: returns (quotient, remainder).
  std::pair<IntPolynomial, IntPolynomial> divmod_monic(const IntPolynomial& divisor) const;

  std::string to_string() const;

  IntPolynomial& operator+=(const IntPolynomial& other);
  IntPolynomial& operator-=(const IntPolynomial& other);
  IntPolynomial& operator*=(const IntPolynomial& other);

  friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
  friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) { return a -= b; }
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator*(const IntPolynomial& a, long scalar);
  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void normalize();
  std::vector<mpz_class> coeffs_;
};

}  // namespace sttrace
