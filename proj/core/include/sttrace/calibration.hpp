#pragma once

namespace sttrace {

/// Constants that the asymptotic statements leave unspecified. They were
/// measured once with `sttrace calibrate` and frozen; tests assert against them.
struct Calibration {
  /// |remainder| <= C e^{(k-1)(1 - 4/9 - log(9/5))} / (k-1)^{1/3}
  double envelope_constant = 5.0;
  /// |Delta - delta| (k-1)^{1/3} >= c0 on window tuples with S(m,n,N) != 0
  double gap_floor = 0.0;
  /// |Delta| / (K n^2) >= c1 (k-1)^{-1/3} (log k)^{-2}
  double theorem1_constant = 0.0;
  /// |T_n| / (K (2n+1)^3) >= c2 (log k)^{-3} k^{-1/3}
  double theorem2_constant = 0.0;
  /// |head| <= C_h (5e/18)^{k-1} log k / (k-1)^{1/3}
  double head_constant = 5.0;
  /// K in the proxies above
  double proxy_normalization = 1.0;
  /// Caps on the ratios of derivative_bound_check for 1 <= n <= 40.
  double q_derivative_cap = 0.0;
  double q_endpoint_cap = 0.0;
  double x_derivative_cap = 0.0;
};

constexpr Calibration default_calibration() {
  Calibration c;
  c.envelope_constant = 5.0;
  c.gap_floor = 0.15;
  c.theorem1_constant = 0.25;
  c.theorem2_constant = 1.0;
  c.head_constant = 5.0;
  c.proxy_normalization = 1.0;
  c.q_derivative_cap = 2.0;
  c.q_endpoint_cap = 3.0;
  c.x_derivative_cap = 56.0;
  return c;
}

}  // namespace sttrace
