#include "sttrace/chebyshev.hpp"

#include <algorithm>

#include "sttrace/error.hpp"

namespace sttrace {

namespace {

void require_nonnegative(int n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "polynomial index must be nonnegative");
}

// max over i = 0..999 of |f(lo + (hi - lo) i / 999)|, as an upper bound.
double grid_max_abs(const IntPolynomial& f, long lo, long hi) {
  const mpfr_prec_t prec = 256;
  double best = 0.0;
  for (long i = 0; i < 1000; ++i) {
    const Ball x = Ball::from_int(lo, prec) + Ball::from_rational((hi - lo) * i, 999, prec);
    best = std::max(best, f.evaluate(x).mag_upper_double());
  }
  return best;
}

}  // namespace

IntPolynomial chebyshev_x(int n) {
  require_nonnegative(n);
  IntPolynomial prev{1};
  if (n == 0) return prev;
  IntPolynomial cur = IntPolynomial::x();
  for (int i = 1; i < n; ++i) {
    IntPolynomial next = IntPolynomial::x() * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

IntPolynomial poly_y(int m) {
  require_nonnegative(m);
  IntPolynomial prev{1};
  if (m == 0) return prev;
  IntPolynomial cur = IntPolynomial::x();
  const IntPolynomial shift{-1, 1};  // x - 1
  for (int i = 1; i < m; ++i) {
    IntPolynomial next = shift * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

IntPolynomial poly_q(int m) {
  require_nonnegative(m);
  IntPolynomial sum;
  for (int j = m % 2; j <= m; j += 2) sum += poly_y(j);
  return sum;
}

bool verify_composition(int m) {
  require_nonnegative(m);
  return chebyshev_x(2 * m) == poly_y(m).compose(chebyshev_x(2));
}

DerivativeBounds derivative_bound_check(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "derivative bound check needs n >= 1");
  const double n2 = static_cast<double>(n) * n;
  const double n3 = n2 * n;
  const IntPolynomial q = poly_q(n);
  DerivativeBounds out;
  out.q_derivative_ratio = grid_max_abs(q.derivative(), -1, 3) / n3;
  out.q_endpoint_ratio = q.evaluate(Ball::from_int(3, 256)).mag_upper_double() / n2;
  out.x_derivative_ratio = grid_max_abs(chebyshev_x(2 * n).derivative(), -2, 2) / n2;
  return out;
}

}  // namespace sttrace
