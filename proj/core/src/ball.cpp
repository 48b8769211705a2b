#include "sttrace/ball.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <utility>

#include "sttrace/error.hpp"

namespace sttrace {

namespace {

// Scoped mpfr_t.
class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }
  operator mpfr_ptr() { return v_; }

 private:
  mpfr_t v_;
};

using UnaryFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

std::string format_mpfr(const char* fmt, int digits, mpfr_srcptr x) {
  char* buf = nullptr;
  if (mpfr_asprintf(&buf, fmt, digits, x) < 0 || buf == nullptr) {
    return "nan";
  }
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

}  // namespace

class BallAccess {
 public:
  static mpfr_ptr mid(Ball& b) { return b.mid_; }
  static mpfr_ptr rad(Ball& b) { return b.rad_; }

  // Adds one ulp of the midpoint to the radius when the last midpoint
  // operation was inexact.
  static void account_rounding(Ball& b, int ternary) {
    if (!mpfr_number_p(b.mid_)) {
      throw Error(ErrorCode::Overflow, "non-finite Ball midpoint");
    }
    if (ternary == 0) return;
    Mpfr ulp(kRadiusPrecision);
    if (mpfr_zero_p(b.mid_)) {
      mpfr_set_ui_2exp(ulp, 1, mpfr_get_emin(), MPFR_RNDU);
    } else {
      mpfr_set_ui_2exp(ulp, 1, mpfr_get_exp(b.mid_) - mpfr_get_prec(b.mid_), MPFR_RNDU);
    }
    mpfr_add(b.rad_, b.rad_, ulp, MPFR_RNDU);
  }

  // Outward-rounded endpoints at the Ball's own precision.
  static void lower(const Ball& b, mpfr_ptr out) { mpfr_sub(out, b.mid_, b.rad_, MPFR_RNDD); }
  static void upper(const Ball& b, mpfr_ptr out) { mpfr_add(out, b.mid_, b.rad_, MPFR_RNDU); }

  static Ball monotone(const Ball& x, UnaryFn fn, bool increasing) {
    const mpfr_prec_t prec = x.precision();
    Mpfr lo(prec), hi(prec), flo(prec), fhi(prec);
    lower(x, lo);
    upper(x, hi);
    if (increasing) {
      fn(flo, lo, MPFR_RNDD);
      fn(fhi, hi, MPFR_RNDU);
    } else {
      fn(flo, hi, MPFR_RNDD);
      fn(fhi, lo, MPFR_RNDU);
    }
    return Ball::from_endpoints(flo.get(), fhi.get(), prec);
  }

  // Same as monotone() but with the input endpoints clamped to [lo_clamp, hi_clamp].
  static Ball monotone_clamped(const Ball& x, UnaryFn fn, bool increasing, long lo_clamp,
                               long hi_clamp) {
    const mpfr_prec_t prec = x.precision();
    Mpfr lo(prec), hi(prec), flo(prec), fhi(prec);
    lower(x, lo);
    upper(x, hi);
    if (mpfr_cmp_si(hi, lo_clamp) < 0 || mpfr_cmp_si(lo, hi_clamp) > 0) {
      throw Error(ErrorCode::DomainError, "Ball lies outside the function domain");
    }
    if (mpfr_cmp_si(lo, lo_clamp) < 0) mpfr_set_si(lo, lo_clamp, MPFR_RNDN);
    if (mpfr_cmp_si(hi, hi_clamp) > 0) mpfr_set_si(hi, hi_clamp, MPFR_RNDN);
    if (increasing) {
      fn(flo, lo, MPFR_RNDD);
      fn(fhi, hi, MPFR_RNDU);
    } else {
      fn(flo, hi, MPFR_RNDD);
      fn(fhi, lo, MPFR_RNDU);
    }
    return Ball::from_endpoints(flo.get(), fhi.get(), prec);
  }

  // Functions with |f'| <= 1 everywhere.
  static Ball lipschitz_one(const Ball& x, UnaryFn fn) {
    Ball r(x.precision());
    int t = fn(r.mid_, x.mid_, MPFR_RNDN);
    mpfr_set(r.rad_, x.rad_, MPFR_RNDU);
    account_rounding(r, t);
    return r;
  }
};

Ball::Ball(mpfr_prec_t prec) {
  mpfr_init2(mid_, prec);
  mpfr_init2(rad_, kRadiusPrecision);
  mpfr_set_zero(mid_, 1);
  mpfr_set_zero(rad_, 1);
}

Ball::Ball(const Ball& other) {
  mpfr_init2(mid_, other.precision());
  mpfr_init2(rad_, kRadiusPrecision);
  mpfr_set(mid_, other.mid_, MPFR_RNDN);
  mpfr_set(rad_, other.rad_, MPFR_RNDU);
}

Ball::Ball(Ball&& other) noexcept {
  mpfr_init2(mid_, MPFR_PREC_MIN);
  mpfr_init2(rad_, kRadiusPrecision);
  mpfr_set_zero(mid_, 1);
  mpfr_set_zero(rad_, 1);
  mpfr_swap(mid_, other.mid_);
  mpfr_swap(rad_, other.rad_);
}

Ball& Ball::operator=(const Ball& other) {
  if (this != &other) {
    mpfr_set_prec(mid_, other.precision());
    mpfr_set(mid_, other.mid_, MPFR_RNDN);
    mpfr_set(rad_, other.rad_, MPFR_RNDU);
  }
  return *this;
}

Ball& Ball::operator=(Ball&& other) noexcept {
  if (this != &other) {
    mpfr_swap(mid_, other.mid_);
    mpfr_swap(rad_, other.rad_);
  }
  return *this;
}

Ball::~Ball() {
  mpfr_clear(mid_);
  mpfr_clear(rad_);
}

Ball Ball::from_int(long value, mpfr_prec_t prec) {
  Ball r(prec);
  int t = mpfr_set_si(r.mid_, value, MPFR_RNDN);
  BallAccess::account_rounding(r, t);
  return r;
}

Ball Ball::from_mpz(const mpz_class& value, mpfr_prec_t prec) {
  Ball r(prec);
  int t = mpfr_set_z(r.mid_, value.get_mpz_t(), MPFR_RNDN);
  BallAccess::account_rounding(r, t);
  return r;
}

Ball Ball::from_rational(long num, long den, mpfr_prec_t prec) {
  if (den == 0) throw Error(ErrorCode::DomainError, "zero denominator");
  return from_int(num, prec) / from_int(den, prec);
}

Ball Ball::from_double(double value, mpfr_prec_t prec) {
  if (!std::isfinite(value)) throw Error(ErrorCode::DomainError, "non-finite double");
  Ball r(prec);
  int t = mpfr_set_d(r.mid_, value, MPFR_RNDN);
  BallAccess::account_rounding(r, t);
  return r;
}

Ball Ball::from_string(const std::string& decimal, mpfr_prec_t prec) {
  Ball r(prec);
  int t = mpfr_set_str(r.mid_, decimal.c_str(), 10, MPFR_RNDN);
  if (t != 0) {
    throw Error(ErrorCode::InvalidArgument, "not a decimal number: " + decimal);
  }
  // mpfr_set_str returns 0/-1 rather than a ternary value; assume inexact.
  BallAccess::account_rounding(r, 1);
  return r;
}

Ball Ball::from_endpoints(const mpfr_t lo, const mpfr_t hi, mpfr_prec_t prec) {
  if (mpfr_cmp(lo, hi) > 0) {
    throw Error(ErrorCode::DomainError, "from_endpoints: lo > hi");
  }
  Ball r(prec);
  Mpfr sum(prec + 2);
  mpfr_add(sum, lo, hi, MPFR_RNDN);
  mpfr_div_2ui(sum, sum, 1, MPFR_RNDN);
  mpfr_set(r.mid_, sum.get(), MPFR_RNDN);
  if (!mpfr_number_p(r.mid_)) throw Error(ErrorCode::Overflow, "non-finite endpoint");
  Mpfr a(kRadiusPrecision), b(kRadiusPrecision);
  mpfr_sub(a, hi, r.mid_, MPFR_RNDU);
  mpfr_sub(b, r.mid_, lo, MPFR_RNDU);
  mpfr_max(r.rad_, a, b, MPFR_RNDU);
  if (mpfr_sgn(r.rad_) < 0) mpfr_set_zero(r.rad_, 1);
  return r;
}

Ball Ball::with_radius(const Ball& mid, double radius) {
  Ball r(mid);
  r.widen(radius);
  return r;
}

double Ball::mid_double() const { return mpfr_get_d(mid_, MPFR_RNDN); }
double Ball::rad_double() const { return mpfr_get_d(rad_, MPFR_RNDU); }

double Ball::lower_double() const {
  Mpfr lo(precision());
  BallAccess::lower(*this, lo);
  return mpfr_get_d(lo, MPFR_RNDD);
}

double Ball::upper_double() const {
  Mpfr hi(precision());
  BallAccess::upper(*this, hi);
  return mpfr_get_d(hi, MPFR_RNDU);
}

double Ball::mag_upper_double() const {
  Mpfr m(precision());
  mpfr_abs(m, mid_, MPFR_RNDU);
  mpfr_add(m, m, rad_, MPFR_RNDU);
  return mpfr_get_d(m, MPFR_RNDU);
}

double Ball::mag_lower_double() const {
  Mpfr m(precision());
  mpfr_abs(m, mid_, MPFR_RNDD);
  mpfr_sub(m, m, rad_, MPFR_RNDD);
  if (mpfr_sgn(m.get()) < 0) return 0.0;
  return mpfr_get_d(m, MPFR_RNDD);
}

Ball Ball::lower() const {
  Ball r(precision());
  BallAccess::lower(*this, r.mid_);
  return r;
}

Ball Ball::upper() const {
  Ball r(precision());
  BallAccess::upper(*this, r.mid_);
  return r;
}

Ball Ball::mag_upper() const {
  Ball r(precision());
  mpfr_abs(r.mid_, mid_, MPFR_RNDU);
  mpfr_add(r.mid_, r.mid_, rad_, MPFR_RNDU);
  return r;
}

Ball Ball::mag_lower() const {
  Ball r(precision());
  mpfr_abs(r.mid_, mid_, MPFR_RNDD);
  mpfr_sub(r.mid_, r.mid_, rad_, MPFR_RNDD);
  if (mpfr_sgn(r.mid_) < 0) mpfr_set_zero(r.mid_, 1);
  return r;
}

bool Ball::contains_zero() const {
  Mpfr m(kRadiusPrecision);
  mpfr_abs(m, mid_, MPFR_RNDD);
  return mpfr_cmp(m, rad_) <= 0;
}

bool Ball::contains(const Ball& other) const {
  const mpfr_prec_t prec = std::max(precision(), other.precision()) + kRadiusPrecision;
  Mpfr lo(prec), hi(prec), olo(prec), ohi(prec);
  mpfr_sub(lo, mid_, rad_, MPFR_RNDD);
  mpfr_add(hi, mid_, rad_, MPFR_RNDU);
  mpfr_sub(olo, other.mid_, other.rad_, MPFR_RNDD);
  mpfr_add(ohi, other.mid_, other.rad_, MPFR_RNDU);
  return mpfr_cmp(lo, olo) <= 0 && mpfr_cmp(ohi, hi) <= 0;
}

bool Ball::contains(double value) const {
  return contains(Ball::from_double(value, std::max<mpfr_prec_t>(precision(), 64)));
}

bool Ball::overlaps(const Ball& other) const {
  const mpfr_prec_t prec = std::max(precision(), other.precision()) + kRadiusPrecision;
  Mpfr lo(prec), hi(prec), olo(prec), ohi(prec);
  mpfr_sub(lo, mid_, rad_, MPFR_RNDD);
  mpfr_add(hi, mid_, rad_, MPFR_RNDU);
  mpfr_sub(olo, other.mid_, other.rad_, MPFR_RNDD);
  mpfr_add(ohi, other.mid_, other.rad_, MPFR_RNDU);
  return mpfr_cmp(lo, ohi) <= 0 && mpfr_cmp(olo, hi) <= 0;
}

bool Ball::is_positive() const {
  Mpfr lo(precision());
  BallAccess::lower(*this, lo);
  return mpfr_sgn(lo.get()) > 0;
}

bool Ball::is_negative() const {
  Mpfr hi(precision());
  BallAccess::upper(*this, hi);
  return mpfr_sgn(hi.get()) < 0;
}

bool Ball::is_nonnegative() const {
  Mpfr lo(precision());
  BallAccess::lower(*this, lo);
  return mpfr_sgn(lo.get()) >= 0;
}

bool Ball::certainly_less(const Ball& other) const {
  const mpfr_prec_t prec = std::max(precision(), other.precision());
  Mpfr hi(prec), olo(prec);
  mpfr_add(hi, mid_, rad_, MPFR_RNDU);
  mpfr_sub(olo, other.mid_, other.rad_, MPFR_RNDD);
  return mpfr_cmp(hi, olo) < 0;
}

bool Ball::certainly_less_equal(const Ball& other) const {
  const mpfr_prec_t prec = std::max(precision(), other.precision());
  Mpfr hi(prec), olo(prec);
  mpfr_add(hi, mid_, rad_, MPFR_RNDU);
  mpfr_sub(olo, other.mid_, other.rad_, MPFR_RNDD);
  return mpfr_cmp(hi, olo) <= 0;
}

void Ball::widen(const Ball& extra) {
  Mpfr m(kRadiusPrecision);
  mpfr_abs(m, extra.mid_, MPFR_RNDU);
  mpfr_add(m, m, extra.rad_, MPFR_RNDU);
  mpfr_add(rad_, rad_, m, MPFR_RNDU);
}

void Ball::widen(double extra) {
  if (!(extra >= 0.0) || !std::isfinite(extra)) {
    throw Error(ErrorCode::DomainError, "widen: radius must be finite and nonnegative");
  }
  mpfr_add_d(rad_, rad_, extra, MPFR_RNDU);
}

Ball Ball::with_precision(mpfr_prec_t prec) const {
  Ball r(prec);
  int t = mpfr_set(r.mid_, mid_, MPFR_RNDN);
  mpfr_set(r.rad_, rad_, MPFR_RNDU);
  BallAccess::account_rounding(r, t);
  return r;
}

std::string Ball::mid_string(int digits) const { return format_mpfr("%.*Rg", digits, mid_); }

std::string Ball::rad_string(int digits) const { return format_mpfr("%.*RUe", digits, rad_); }

std::string Ball::to_string(int digits) const {
  return "[" + mid_string(digits) + " +/- " + rad_string(3) + "]";
}

Ball Ball::operator-() const {
  Ball r(*this);
  mpfr_neg(r.mid_, r.mid_, MPFR_RNDN);
  return r;
}

Ball& Ball::operator+=(const Ball& other) { return *this = *this + other; }
Ball& Ball::operator-=(const Ball& other) { return *this = *this - other; }
Ball& Ball::operator*=(const Ball& other) { return *this = *this * other; }
Ball& Ball::operator/=(const Ball& other) { return *this = *this / other; }

Ball operator+(const Ball& a, const Ball& b) {
  Ball r(std::max(a.precision(), b.precision()));
  int t = mpfr_add(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
  mpfr_add(r.rad_, a.rad_, b.rad_, MPFR_RNDU);
  BallAccess::account_rounding(r, t);
  return r;
}

Ball operator-(const Ball& a, const Ball& b) {
  Ball r(std::max(a.precision(), b.precision()));
  int t = mpfr_sub(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
  mpfr_add(r.rad_, a.rad_, b.rad_, MPFR_RNDU);
  BallAccess::account_rounding(r, t);
  return r;
}

Ball operator*(const Ball& a, const Ball& b) {
  Ball r(std::max(a.precision(), b.precision()));
  int t = mpfr_mul(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
  // |a b - ma mb| <= |ma| rb + |mb| ra + ra rb
  Mpfr x(kRadiusPrecision), y(kRadiusPrecision);
  mpfr_abs(x, a.mid_, MPFR_RNDU);
  mpfr_mul(x, x, b.rad_, MPFR_RNDU);
  mpfr_abs(y, b.mid_, MPFR_RNDU);
  mpfr_mul(y, y, a.rad_, MPFR_RNDU);
  mpfr_add(x, x, y, MPFR_RNDU);
  mpfr_mul(y, a.rad_, b.rad_, MPFR_RNDU);
  mpfr_add(r.rad_, x, y, MPFR_RNDU);
  BallAccess::account_rounding(r, t);
  return r;
}

Ball operator/(const Ball& a, const Ball& b) {
  if (b.contains_zero()) {
    throw Error(ErrorCode::DomainError, "division by a Ball containing zero");
  }
  Ball r(std::max(a.precision(), b.precision()));
  int t = mpfr_div(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
  if (!mpfr_zero_p(a.rad_) || !mpfr_zero_p(b.rad_)) {
    // |a/b - ma/mb| <= (ra + |ma/mb| rb) / (|mb| - rb)
    Mpfr num(kRadiusPrecision), den(kRadiusPrecision), q(kRadiusPrecision);
    mpfr_abs(den, b.mid_, MPFR_RNDD);
    mpfr_sub(den, den, b.rad_, MPFR_RNDD);
    if (mpfr_sgn(den.get()) <= 0) {
      throw Error(ErrorCode::DomainError, "division by a Ball too close to zero");
    }
    Mpfr absa(kRadiusPrecision), absb(kRadiusPrecision);
    mpfr_abs(absa, a.mid_, MPFR_RNDU);
    mpfr_abs(absb, b.mid_, MPFR_RNDD);
    mpfr_div(q, absa, absb, MPFR_RNDU);
    mpfr_mul(q, q, b.rad_, MPFR_RNDU);
    mpfr_add(num, a.rad_, q, MPFR_RNDU);
    mpfr_div(r.rad_, num, den, MPFR_RNDU);
  }
  BallAccess::account_rounding(r, t);
  return r;
}

Ball operator+(const Ball& a, long b) { return a + Ball::from_int(b, std::max<mpfr_prec_t>(a.precision(), 64)); }
Ball operator-(const Ball& a, long b) { return a - Ball::from_int(b, std::max<mpfr_prec_t>(a.precision(), 64)); }
Ball operator-(long a, const Ball& b) { return Ball::from_int(a, std::max<mpfr_prec_t>(b.precision(), 64)) - b; }
Ball operator*(const Ball& a, long b) { return a * Ball::from_int(b, std::max<mpfr_prec_t>(a.precision(), 64)); }
Ball operator*(long a, const Ball& b) { return b * a; }
Ball operator/(const Ball& a, long b) { return a / Ball::from_int(b, std::max<mpfr_prec_t>(a.precision(), 64)); }

Ball pi(mpfr_prec_t prec) {
  Mpfr lo(prec), hi(prec);
  mpfr_const_pi(lo, MPFR_RNDD);
  mpfr_const_pi(hi, MPFR_RNDU);
  return Ball::from_endpoints(lo.get(), hi.get(), prec);
}

Ball abs(const Ball& x) {
  if (x.is_nonnegative()) return x;
  if (x.is_negative()) return -x;
  // Straddles zero: enclose [0, |x|_max].
  Ball hi = x.mag_upper();
  Mpfr zero(x.precision());
  mpfr_set_zero(zero, 1);
  return Ball::from_endpoints(zero.get(), hi.mid(), x.precision());
}

Ball sqr(const Ball& x) { return pow(x, 2); }

Ball sqrt(const Ball& x) {
  if (!x.is_nonnegative()) throw Error(ErrorCode::DomainError, "sqrt of a Ball with negative part");
  return BallAccess::monotone(x, mpfr_sqrt, true);
}

Ball sqrt_nonneg(const Ball& x) {
  const mpfr_prec_t prec = x.precision();
  Mpfr lo(prec), hi(prec), flo(prec), fhi(prec);
  mpfr_sub(lo, x.mid(), x.rad(), MPFR_RNDD);
  mpfr_add(hi, x.mid(), x.rad(), MPFR_RNDU);
  if (mpfr_sgn(hi.get()) < 0) throw Error(ErrorCode::DomainError, "sqrt of a negative Ball");
  if (mpfr_sgn(lo.get()) < 0) mpfr_set_zero(lo, 1);
  mpfr_sqrt(flo, lo, MPFR_RNDD);
  mpfr_sqrt(fhi, hi, MPFR_RNDU);
  return Ball::from_endpoints(flo.get(), fhi.get(), prec);
}

Ball cbrt(const Ball& x) { return BallAccess::monotone(x, mpfr_cbrt, true); }
Ball exp(const Ball& x) { return BallAccess::monotone(x, mpfr_exp, true); }

Ball log(const Ball& x) {
  if (!x.is_positive()) throw Error(ErrorCode::DomainError, "log of a Ball with nonpositive part");
  return BallAccess::monotone(x, mpfr_log, true);
}

Ball cos(const Ball& x) { return BallAccess::lipschitz_one(x, mpfr_cos); }
Ball sin(const Ball& x) { return BallAccess::lipschitz_one(x, mpfr_sin); }
Ball atan(const Ball& x) { return BallAccess::monotone(x, mpfr_atan, true); }

Ball acos_clamped(const Ball& x) { return BallAccess::monotone_clamped(x, mpfr_acos, false, -1, 1); }
Ball asin_clamped(const Ball& x) { return BallAccess::monotone_clamped(x, mpfr_asin, true, -1, 1); }

Ball atan2_upper_half(const Ball& y, const Ball& x) {
  const mpfr_prec_t prec = std::max(x.precision(), y.precision());
  if (x.is_positive()) return atan(y / x);
  if (x.is_negative()) return pi(prec) + atan(y / x);
  if (!y.is_positive()) {
    throw Error(ErrorCode::DomainError, "atan2 undefined near the origin");
  }
  Ball half_pi = pi(prec) / 2;
  return half_pi - atan(x / y);
}

Ball pow(const Ball& x, unsigned long n) {
  const mpfr_prec_t prec = x.precision();
  if (n == 0) return Ball::from_int(1, prec);
  if (x.is_nonnegative()) {
    Mpfr lo(prec), hi(prec), flo(prec), fhi(prec);
    mpfr_sub(lo, x.mid(), x.rad(), MPFR_RNDD);
    mpfr_add(hi, x.mid(), x.rad(), MPFR_RNDU);
    if (mpfr_sgn(lo.get()) < 0) mpfr_set_zero(lo, 1);
    mpfr_pow_ui(flo, lo, n, MPFR_RNDD);
    mpfr_pow_ui(fhi, hi, n, MPFR_RNDU);
    return Ball::from_endpoints(flo.get(), fhi.get(), prec);
  }
  if (x.is_negative()) {
    Ball r = pow(-x, n);
    return (n % 2 == 0) ? r : -r;
  }
  Ball result = Ball::from_int(1, prec);
  Ball base = x;
  while (n > 0) {
    if (n & 1UL) result *= base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

Ball hull(const Ball& a, const Ball& b) {
  const mpfr_prec_t prec = std::max(a.precision(), b.precision());
  Mpfr alo(prec), ahi(prec), blo(prec), bhi(prec);
  mpfr_sub(alo, a.mid(), a.rad(), MPFR_RNDD);
  mpfr_add(ahi, a.mid(), a.rad(), MPFR_RNDU);
  mpfr_sub(blo, b.mid(), b.rad(), MPFR_RNDD);
  mpfr_add(bhi, b.mid(), b.rad(), MPFR_RNDU);
  mpfr_min(alo, alo, blo, MPFR_RNDD);
  mpfr_max(ahi, ahi, bhi, MPFR_RNDU);
  return Ball::from_endpoints(alo.get(), ahi.get(), prec);
}

}  // namespace sttrace
