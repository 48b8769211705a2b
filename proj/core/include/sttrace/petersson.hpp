#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sttrace/ball.hpp"

namespace sttrace {

/// One summand 2 pi i^k S(m,n,c)/c J_{k-1}(4 pi sqrt(mn)/c) with c = bN.
struct PeterssonTerm {
  long b = 0;
  std::int64_t c = 0;
  Ball kloosterman;
  Ball bessel;
  Ball contribution;
};

struct PeterssonValue {
  long k = 0;
  std::int64_t N = 0;
  std::int64_t m = 0;
  std::int64_t n = 0;
  /// Terms with c = bN for 1 <= b < truncation are summed.
  long truncation = 0;
  mpfr_prec_t precision_bits = 0;
  int delta_term = 0;
  /// delta(m,n) plus the summed terms.
  Ball partial;
  /// Rigorous bound on the omitted terms, as a Ball and rounded up to double.
  Ball tail;
  double tail_bound = 0.0;
  /// partial widened by the tail bound.
  Ball value;
  std::vector<PeterssonTerm> terms;
};

/// Truncated Petersson sum with an integral-test tail bound (valid when
/// x_B = 4 pi sqrt(mn) / ((k-1) B N) < 1, else TailNotCertifiable).
PeterssonValue delta_truncated(long k, std::int64_t N, std::int64_t m, std::int64_t n, long truncation,
                               mpfr_prec_t precision_bits);

/// Twice the smallest B >= 2 with x_B <= 5/18.
long default_truncation(long k, std::int64_t N, std::int64_t m, std::int64_t n);

/// |4 pi sqrt(mn)/N - (k-1)| < (k-1)^{1/3}, decided in Ball arithmetic.
bool in_window(long k, std::int64_t N, std::int64_t m, std::int64_t n);

/// e^{(k-1)(1 - 4/9 - log(9/5))} / (k-1)^{1/3}
double error_envelope(long k);

struct AsymptoticCheck {
  bool window_ok = false;
  PeterssonValue value;
  /// 2 pi i^k S(m,n,N)/N J_{k-1}(4 pi sqrt(mn)/N)
  Ball main_term;
  /// value - delta - main_term: the b >= 2 terms widened by the tail.
  Ball remainder;
  double error_envelope = 0.0;
  double constant = 0.0;
  /// |remainder| <= constant * error_envelope, certified.
  bool within_envelope = false;
  /// Lower bound of |value - delta| (k-1)^{1/3}.
  double scaled_gap = 0.0;
};

/// Requires even k >= 28.
AsymptoticCheck asymptotic_check(long k, std::int64_t N, std::int64_t m, std::int64_t n, mpfr_prec_t precision_bits,
                                 double constant);

/// (sum_{i<n} Delta_{k,N}(1, p^{4i+2}), Delta_{k,N}(1, p^{4n+2})). Throws
/// WindowViolation if (1, p^{4n+2}) is outside the window for k.
std::pair<Ball, Ball> small_sum_check(std::int64_t p, std::int64_t N, int n, long k, mpfr_prec_t precision_bits);

}  // namespace sttrace
