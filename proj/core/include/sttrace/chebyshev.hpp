#pragma once

#include "sttrace/int_polynomial.hpp"

namespace sttrace {

/// Chebyshev polynomials of the second kind in the normalization
/// X_n(2 cos t) = sin((n+1) t) / sin t: X_0 = 1, X_1 = x, X_{n+1} = x X_n - X_{n-1}.
IntPolynomial chebyshev_x(int n);

/// Y_0 = 1, Y_1 = x, Y_m = (x - 1) Y_{m-1} - Y_{m-2}; generating function
/// (1 + t) / (1 - (x - 1) t + t^2), so that X_{2m} = Y_m(X_2).
IntPolynomial poly_y(int m);

/// Q_m = Y_m + Y_{m-2} + ... down to Y_1 or Y_0.
IntPolynomial poly_q(int m);

/// Exact check of X_{2m} = Y_m o X_2.
bool verify_composition(int m);

struct DerivativeBounds {
  /// max |Q_n'| over 1000 grid points of [-1, 3], divided by n^3.
  double q_derivative_ratio = 0.0;
  /// |Q_n(3)| / n^2.
  double q_endpoint_ratio = 0.0;
  /// max |X_{2n}'| over 1000 grid points of [-2, 2], divided by n^2.
  double x_derivative_ratio = 0.0;
};

/// Ratios are rigorous upper bounds (Ball evaluation at exact grid points).
DerivativeBounds derivative_bound_check(int n);

}  // namespace sttrace
