#include "sttrace/petersson.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "sttrace/bessel.hpp"
#include "sttrace/error.hpp"
#include "sttrace/kloosterman.hpp"
#include "sttrace/number_theory.hpp"

namespace sttrace {

namespace {

// 4 pi sqrt(mn) / N at working precision w.
Ball bessel_scale(std::int64_t N, std::int64_t m, std::int64_t n, mpfr_prec_t w) {
  const mpz_class mn = mpz_class(static_cast<long>(m)) * static_cast<long>(n);
  return pi(w) * 4 * sqrt(Ball::from_mpz(mn, w)) / static_cast<long>(N);
}

void check_arguments(long k, std::int64_t N, std::int64_t m, std::int64_t n) {
  if (k < 4 || k % 2 != 0) throw Error(ErrorCode::InvalidArgument, "weight must be even and >= 4");
  if (N < 1) throw Error(ErrorCode::InvalidModulus, "level must be positive");
  if (m < 1 || n < 1) throw Error(ErrorCode::InvalidArgument, "m and n must be positive");
}

}  // namespace

long default_truncation(long k, std::int64_t N, std::int64_t m, std::int64_t n) {
  check_arguments(k, N, m, n);
  // x_B <= 5/18  <=>  B >= 18 X / (5 (k-1)).
  const Ball bound = bessel_scale(N, m, n, 128) * 18 / (5 * (k - 1));
  const long b0 = std::max(2L, static_cast<long>(std::ceil(bound.upper_double())));
  return 2 * b0;
}

bool in_window(long k, std::int64_t N, std::int64_t m, std::int64_t n) {
  check_arguments(k, N, m, n);
  const mpfr_prec_t w = 192;
  const Ball a = Ball::from_int(k - 1, w);
  return abs(bessel_scale(N, m, n, w) - a).certainly_less(cbrt(a));
}

double error_envelope(long k) {
  const double a = static_cast<double>(k - 1);
  const double exponent = 1.0 - 4.0 / 9.0 - std::log(9.0 / 5.0);
  return std::exp(a * exponent) / std::cbrt(a);
}

PeterssonValue delta_truncated(long k, std::int64_t N, std::int64_t m, std::int64_t n, long truncation,
                               mpfr_prec_t precision_bits) {
  check_arguments(k, N, m, n);
  if (truncation < 2) throw Error(ErrorCode::InvalidArgument, "truncation must be >= 2");
  const long a = k - 1;
  const mpfr_prec_t p = precision_bits;

  PeterssonValue out;
  out.k = k;
  out.N = N;
  out.m = m;
  out.n = n;
  out.truncation = truncation;
  out.precision_bits = p;
  out.delta_term = (m == n) ? 1 : 0;

  // Tail: x_b = x_1 / b with x_1 = X / a. Every omitted term is at most
  // 2 pi (phi(c)/c) J_a(a x_b) <= 2 pi e^{a(1 - x_b)} x_b^a J_a(a), and the
  // envelope decreases in b while x_b < 1, so
  //   tail <= 2 pi J_a(a) [env(B) + int_B^inf env(t) dt]
  //        <= 2 pi J_a(a) [e^{a(1-x_B)} x_B^a + e^a x_1^a B^{1-a} / (a-1)].
  const Ball x1 = bessel_scale(N, m, n, p) / a;
  const Ball xB = x1 / truncation;
  if (!xB.certainly_less(Ball::from_int(1, p))) {
    throw Error(ErrorCode::TailNotCertifiable, "x_B = " + xB.mid_string(8) + " is not below 1 for truncation " +
                                                   std::to_string(truncation));
  }
  const Ball A = Ball::from_int(a, p);
  const Ball jaa = bessel_j(a, A, p).value.upper();
  const Ball first = exp(A * (1 - xB)) * pow(xB, static_cast<unsigned long>(a));
  const Ball integral = exp(A) * pow(x1, static_cast<unsigned long>(a)) *
                        pow(Ball::from_int(1, p) / truncation, static_cast<unsigned long>(a - 1)) *
                        Ball::from_int(truncation, p) / (a - 1);
  out.tail = (pi(p) * 2 * jaa * (first + integral)).upper();
  out.tail_bound = out.tail.upper_double();

  const long sign = (k / 2) % 2 == 0 ? 1 : -1;
  Ball sum = Ball::from_int(0, p);
  for (long b = 1; b < truncation; ++b) {
    PeterssonTerm t;
    t.b = b;
    t.c = b * N;
    const KloostermanResult s = brute_force_kloosterman(mod(m, t.c), mod(n, t.c), t.c, p);
    t.kloosterman = s.numeric;
    if (s.certificate.is_zero()) {
      t.kloosterman = Ball::from_int(0, p);
      t.bessel = Ball::from_int(0, p);
      t.contribution = Ball::from_int(0, p);
    } else {
      const ArgumentFn arg = [N, m, n, b](mpfr_prec_t w) { return bessel_scale(N, m, n, w) / b; };
      t.bessel = bessel_j(a, arg, p).value;
      t.contribution = pi(p) * 2 * sign * t.kloosterman / t.c * t.bessel;
    }
    sum += t.contribution;
    out.terms.push_back(std::move(t));
  }
  out.partial = sum + out.delta_term;
  out.value = out.partial;
  out.value.widen(out.tail);
  return out;
}

AsymptoticCheck asymptotic_check(long k, std::int64_t N, std::int64_t m, std::int64_t n, mpfr_prec_t precision_bits,
                                 double constant) {
  check_arguments(k, N, m, n);
  if (k < 28) throw Error(ErrorCode::InvalidArgument, "asymptotic check needs k >= 28");
  AsymptoticCheck out;
  out.constant = constant;
  out.window_ok = in_window(k, N, m, n);
  out.error_envelope = error_envelope(k);
  out.value = delta_truncated(k, N, m, n, default_truncation(k, N, m, n), precision_bits);
  out.main_term = out.value.terms.front().contribution;
  Ball rest = Ball::from_int(0, precision_bits);
  for (std::size_t i = 1; i < out.value.terms.size(); ++i) rest += out.value.terms[i].contribution;
  rest.widen(out.value.tail);
  out.remainder = rest;
  out.within_envelope = out.remainder.mag_upper_double() <= constant * out.error_envelope;
  const Ball gap = out.value.value - out.value.delta_term;
  out.scaled_gap = (gap.mag_lower() * cbrt(Ball::from_int(k - 1, precision_bits))).lower_double();
  return out;
}

std::pair<Ball, Ball> small_sum_check(std::int64_t p, std::int64_t N, int n, long k, mpfr_prec_t precision_bits) {
  if (gcd(p, N) != 1) throw Error(ErrorCode::NotCoprime, "gcd(p, N) must be 1");
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "n must be nonnegative");
  const std::int64_t last_n = ipow(p, static_cast<unsigned>(4 * n + 2));
  if (!in_window(k, N, 1, last_n)) {
    throw Error(ErrorCode::WindowViolation,
                "(1, p^" + std::to_string(4 * n + 2) + ") is outside the window for k = " + std::to_string(k));
  }
  Ball head = Ball::from_int(0, precision_bits);
  for (int i = 0; i < n; ++i) {
    const std::int64_t ni = ipow(p, static_cast<unsigned>(4 * i + 2));
    head += delta_truncated(k, N, 1, ni, default_truncation(k, N, 1, ni), precision_bits).value;
  }
  Ball last = delta_truncated(k, N, 1, last_n, default_truncation(k, N, 1, last_n), precision_bits).value;
  return {head, last};
}

}  // namespace sttrace
