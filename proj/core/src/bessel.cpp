#include "sttrace/bessel.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sttrace/error.hpp"

namespace sttrace {

std::string_view to_string(BesselMethod m) {
  return m == BesselMethod::Series ? "series" : "backward";
}

namespace {

// log2 of the largest series term (x/2)^{a+2j} / (j! (a+j)!), in double.
double log2_peak_term(long a, double x) {
  if (x <= 0) return a == 0 ? 0.0 : -1e9;
  const double h = x / 2;
  const double h2 = h * h;
  // Terms grow while h^2 > (j+1)(a+j+1).
  const double jpeak = std::max(0.0, std::floor((-(a + 2.0) + std::sqrt(a * a + 4.0 * h2)) / 2.0) + 1.0);
  double best = -1e300;
  for (double j = std::max(0.0, jpeak - 1); j <= jpeak + 1; j += 1) {
    const double l = (a + 2 * j) * std::log(h) - std::lgamma(j + 1) - std::lgamma(a + j + 1);
    best = std::max(best, l);
  }
  return best / std::log(2.0);
}

// Binary exponent of the midpoint; very negative for zero.
long mid_exponent(const Ball& b) {
  return mpfr_zero_p(b.mid()) ? std::numeric_limits<long>::min() / 2 : static_cast<long>(mpfr_get_exp(b.mid()));
}

// Series at an exact point x (radius zero) with working precision w.
Ball series_at_point(long a, const Ball& x, mpfr_prec_t w) {
  const Ball h = x / 2;
  const Ball h2 = sqr(h);
  mpz_class fact;
  mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(a));
  Ball term = pow(h, static_cast<unsigned long>(a)) / Ball::from_mpz(fact, w);
  Ball sum = term;
  long peak = mid_exponent(term);
  const Ball h2_upper = h2.upper();
  for (long j = 0;; ++j) {
    const Ball denom = Ball::from_mpz(mpz_class(j + 1) * (a + j + 1), w);
    Ball next = -(term * h2) / denom;
    const long e = mid_exponent(next);
    peak = std::max(peak, e);
    // Once the term ratio is below 1 it stays below 1, and the tail of an
    // alternating series with decreasing terms is bounded by its first term.
    if (h2_upper.certainly_less(denom) && (e < peak - static_cast<long>(w) || mpfr_zero_p(next.mid()))) {
      sum.widen(next.mag_upper());
      return sum;
    }
    sum += next;
    term = std::move(next);
  }
}

bool accurate_enough(const Ball& v, mpfr_prec_t p) {
  if (mpfr_zero_p(v.rad())) return true;
  const long re = static_cast<long>(mpfr_get_exp(v.rad()));
  return re <= mid_exponent(v) - static_cast<long>(p) || re <= -2 * static_cast<long>(p);
}

}  // namespace

BesselEval bessel_j(long a, const ArgumentFn& xfn, mpfr_prec_t precision_bits) {
  if (a < 0) throw Error(ErrorCode::InvalidArgument, "Bessel order must be nonnegative");
  if (precision_bits < 16) throw Error(ErrorCode::InvalidArgument, "precision too small");
  Ball x0 = xfn(precision_bits + 64);
  if (x0.is_negative()) throw Error(ErrorCode::DomainError, "Bessel argument must be nonnegative");
  const double xd = std::max(0.0, x0.mid_double());
  const double lpeak = log2_peak_term(a, xd);
  // Cancellation loses about log2(peak) - log2|J| bits and |J| <= 1.
  mpfr_prec_t extra = static_cast<mpfr_prec_t>(std::max(0.0, std::ceil(lpeak))) + 64 +
                      static_cast<mpfr_prec_t>(2 * std::log2(a + xd + 16.0));
  for (;;) {
    const mpfr_prec_t w = precision_bits + extra;
    if (w > kMaxBesselPrecision) {
      throw Error(ErrorCode::PrecisionExhausted,
                  "J_" + std::to_string(a) + " needs more than " + std::to_string(kMaxBesselPrecision) + " bits");
    }
    const Ball x = xfn(w);
    Ball mid = Ball::from_endpoints(x.mid(), x.mid(), w);
    Ball value = series_at_point(a, mid, w);
    // |J_a'(t)| <= 1 for every real t.
    value.widen(Ball::from_endpoints(x.rad(), x.rad(), kRadiusPrecision));
    if (accurate_enough(value, precision_bits) || x.rad_double() > std::ldexp(1.0, -static_cast<int>(precision_bits))) {
      BesselEval out;
      out.order = a;
      out.argument = x;
      out.value = std::move(value);
      out.method = BesselMethod::Series;
      out.precision_bits = precision_bits;
      out.working_precision = w;
      out.rigorous = true;
      return out;
    }
    extra *= 2;
  }
}

BesselEval bessel_j(long a, const Ball& x, mpfr_prec_t precision_bits) {
  return bessel_j(a, ArgumentFn([x](mpfr_prec_t) { return x; }), precision_bits);
}

namespace {

// Unnormalized Miller recurrence from start order m; returns J_a(x) at precision w.
void miller(long a, const mpfr_t x, long start, mpfr_prec_t w, mpfr_t result) {
  mpfr_t fk, fk1, fnext, norm, t, target;
  mpfr_inits2(w, fk, fk1, fnext, norm, t, target, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_ui(fk1, 0, MPFR_RNDN);                  // f_{start+1}
  mpfr_set_ui_2exp(fk, 1, -static_cast<long>(w), MPFR_RNDN);  // f_start
  mpfr_set_ui(norm, 0, MPFR_RNDN);
  mpfr_set_ui(target, 0, MPFR_RNDN);
  for (long k = start; k >= 1; --k) {
    if (k % 2 == 0) mpfr_add(norm, norm, fk, MPFR_RNDN);
    if (k == a) mpfr_set(target, fk, MPFR_RNDN);
    // f_{k-1} = (2k/x) f_k - f_{k+1}
    mpfr_mul_ui(t, fk, static_cast<unsigned long>(2 * k), MPFR_RNDN);
    mpfr_div(t, t, x, MPFR_RNDN);
    mpfr_sub(fnext, t, fk1, MPFR_RNDN);
    mpfr_set(fk1, fk, MPFR_RNDN);
    mpfr_set(fk, fnext, MPFR_RNDN);
    // Rescale to keep magnitudes moderate.
    if (mpfr_get_exp(fk) > 1 << 20) {
      const long s = mpfr_get_exp(fk);
      mpfr_div_2si(fk, fk, s, MPFR_RNDN);
      mpfr_div_2si(fk1, fk1, s, MPFR_RNDN);
      mpfr_div_2si(norm, norm, s, MPFR_RNDN);
      mpfr_div_2si(target, target, s, MPFR_RNDN);
    }
  }
  if (a == 0) mpfr_set(target, fk, MPFR_RNDN);
  mpfr_mul_2ui(norm, norm, 1, MPFR_RNDN);
  mpfr_add(norm, norm, fk, MPFR_RNDN);  // f_0 + 2 sum f_{2k}
  mpfr_div(result, target, norm, MPFR_RNDN);
  mpfr_clears(fk, fk1, fnext, norm, t, target, static_cast<mpfr_ptr>(nullptr));
}

}  // namespace

BesselEval bessel_j_backward(long a, const Ball& x, mpfr_prec_t precision_bits) {
  if (a < 0) throw Error(ErrorCode::InvalidArgument, "Bessel order must be nonnegative");
  if (!x.is_positive()) throw Error(ErrorCode::DomainError, "backward recurrence needs x > 0");
  const mpfr_prec_t w = precision_bits + 64;
  const double xd = x.mid_double();
  const long base = static_cast<long>(std::ceil(std::max<double>(static_cast<double>(a), xd)));
  const long start1 = base + 32 + static_cast<long>(std::ceil(std::cbrt(xd + 1.0) * std::sqrt(precision_bits) * 2));
  const long start2 = start1 + 32 + static_cast<long>(precision_bits / 4);
  mpfr_t xm, v1, v2, diff;
  mpfr_inits2(w, xm, v1, v2, diff, static_cast<mpfr_ptr>(nullptr));
  mpfr_set(xm, x.mid(), MPFR_RNDN);
  miller(a, xm, start1 + (start1 % 2), w, v1);
  miller(a, xm, start2 + (start2 % 2), w, v2);
  mpfr_sub(diff, v1, v2, MPFR_RNDU);
  mpfr_abs(diff, diff, MPFR_RNDU);
  mpfr_mul_2ui(diff, diff, 1, MPFR_RNDU);
  BesselEval out;
  out.order = a;
  out.argument = x;
  out.value = Ball::from_endpoints(v2, v2, w);
  out.value.widen(Ball::from_endpoints(diff, diff, kRadiusPrecision));
  out.value.widen(std::ldexp(std::abs(mpfr_get_d(v2, MPFR_RNDN)), -static_cast<int>(precision_bits) + 8));
  out.value.widen(x.rad_double());
  out.value = out.value.with_precision(precision_bits);
  out.method = BesselMethod::BackwardRecurrence;
  out.precision_bits = precision_bits;
  out.working_precision = w;
  out.rigorous = false;
  mpfr_clears(xm, v1, v2, diff, static_cast<mpfr_ptr>(nullptr));
  return out;
}

Ball transition_eval(long a, double d, mpfr_prec_t precision_bits) {
  if (a < 1) throw Error(ErrorCode::InvalidArgument, "order must be positive");
  const ArgumentFn arg = [a, d](mpfr_prec_t w) {
    const Ball A = Ball::from_int(a, w);
    return A + Ball::from_double(d, w) * cbrt(A);
  };
  return bessel_j(a, arg, precision_bits).value;
}

bool verify_ratio_bound(long a, double x, mpfr_prec_t precision_bits) {
  if (!(x > 0.0 && x <= 1.0)) throw Error(ErrorCode::DomainError, "ratio bound needs 0 < x <= 1");
  if (x == 1.0) return true;
  for (mpfr_prec_t p = precision_bits; p <= 8 * precision_bits; p *= 2) {
    const Ball ja = bessel_j(a, Ball::from_int(a, p), p).value;
    const ArgumentFn ax = [a, x](mpfr_prec_t w) { return Ball::from_int(a, w) * Ball::from_double(x, w); };
    const Ball jax = bessel_j(a, ax, p).value;
    const Ball X = Ball::from_double(x, p);
    const Ball ratio = jax / (pow(X, static_cast<unsigned long>(a)) * ja);
    const Ball one = Ball::from_int(1, p);
    const Ball upper = exp(Ball::from_int(a, p) * (one - X));
    const bool lower_ok = one.certainly_less_equal(ratio);
    const bool upper_ok = ratio.certainly_less_equal(upper);
    if (lower_ok && upper_ok) return true;
    // A certified violation is a genuine failure.
    if (ratio.certainly_less(one) || upper.certainly_less(ratio)) return false;
  }
  throw Error(ErrorCode::PrecisionExhausted, "ratio bound inconclusive");
}

}  // namespace sttrace
