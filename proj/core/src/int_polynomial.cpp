#include "sttrace/int_polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "sttrace/error.hpp"

namespace sttrace {

IntPolynomial::IntPolynomial(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

IntPolynomial::IntPolynomial(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
  normalize();
}

IntPolynomial IntPolynomial::monomial(long coefficient, int degree) {
  if (degree < 0) throw Error(ErrorCode::InvalidArgument, "negative monomial degree");
  std::vector<mpz_class> c(static_cast<std::size_t>(degree) + 1);
  c.back() = coefficient;
  return IntPolynomial(std::move(c));
}

void IntPolynomial::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

mpz_class IntPolynomial::coeff(int i) const {
  if (i < 0 || i > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

IntPolynomial IntPolynomial::derivative() const {
  if (degree() < 1) return {};
  std::vector<mpz_class> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
  return IntPolynomial(std::move(d));
}

IntPolynomial IntPolynomial::compose(const IntPolynomial& inner) const {
  IntPolynomial result;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    result = result * inner;
    result += IntPolynomial(std::vector<mpz_class>{*it});
  }
  return result;
}

mpz_class IntPolynomial::evaluate(const mpz_class& x) const {
  mpz_class acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Ball IntPolynomial::evaluate(const Ball& x) const {
  const mpfr_prec_t prec = x.precision();
  Ball acc(prec);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * x + Ball::from_mpz(*it, prec);
  }
  return acc;
}

std::pair<IntPolynomial, IntPolynomial> IntPolynomial::divmod_monic(const IntPolynomial& divisor) const {
  if (divisor.is_zero() || divisor.leading() != 1) {
    throw Error(ErrorCode::InvalidArgument, "divmod_monic requires a monic divisor");
  }
  const int dd = divisor.degree();
  if (degree() < dd) return {IntPolynomial{}, *this};
  std::vector<mpz_class> rem = coeffs_;
  std::vector<mpz_class> quot(static_cast<std::size_t>(degree() - dd) + 1);
  for (int i = degree(); i >= dd; --i) {
    const mpz_class q = rem[static_cast<std::size_t>(i)];
    if (q == 0) continue;
    quot[static_cast<std::size_t>(i - dd)] = q;
    for (int j = 0; j <= dd; ++j) {
      rem[static_cast<std::size_t>(i - dd + j)] -= q * divisor.coeffs_[static_cast<std::size_t>(j)];
    }
  }
  rem.resize(static_cast<std::size_t>(dd));
  return {IntPolynomial(std::move(quot)), IntPolynomial(std::move(rem))};
}

std::string IntPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const mpz_class& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    mpz_class mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (mag != 1 || i == 0) out << mag.get_str();
    if (i >= 1) out << "x";
    if (i >= 2) out << "^" << i;
  }
  return out.str();
}

IntPolynomial& IntPolynomial::operator+=(const IntPolynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  normalize();
  return *this;
}

IntPolynomial& IntPolynomial::operator-=(const IntPolynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  normalize();
  return *this;
}

IntPolynomial& IntPolynomial::operator*=(const IntPolynomial& other) { return *this = *this * other; }

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpz_class> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return IntPolynomial(std::move(out));
}

IntPolynomial operator*(const IntPolynomial& a, long scalar) {
  std::vector<mpz_class> out = a.coeffs_;
  for (auto& c : out) c *= scalar;
  return IntPolynomial(std::move(out));
}

}  // namespace sttrace
