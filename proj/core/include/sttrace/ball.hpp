#pragma once

#include <mpfr.h>
#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace sttrace {

/// Bits of precision used to store radii. Radii are always rounded upward.
inline constexpr mpfr_prec_t kRadiusPrecision = 64;
inline constexpr mpfr_prec_t kDefaultPrecision = 128;

/// Midpoint-radius enclosure of a real number.
///
/// The midpoint lives at an arbitrary MPFR precision, the radius at
/// kRadiusPrecision bits. Every operation returns a Ball that contains the
/// exact result for every choice of points inside the operand Balls. Binary
/// operations run at the larger of the two operand precisions.
class Ball {
 public:
  explicit Ball(mpfr_prec_t prec = kDefaultPrecision);
  Ball(const Ball& other);
  Ball(Ball&& other) noexcept;
  Ball& operator=(const Ball& other);
  Ball& operator=(Ball&& other) noexcept;
  ~Ball();

  static Ball from_int(long value, mpfr_prec_t prec = kDefaultPrecision);
  static Ball from_mpz(const mpz_class& value, mpfr_prec_t prec = kDefaultPrecision);
  static Ball from_rational(long num, long den, mpfr_prec_t prec = kDefaultPrecision);
  /// Exact: every double is a dyadic rational.
  static Ball from_double(double value, mpfr_prec_t prec = kDefaultPrecision);
  /// Decimal string, e.g. "0.25" or "1e-30"; the conversion error lands in the radius.
  static Ball from_string(const std::string& decimal, mpfr_prec_t prec = kDefaultPrecision);
  /// Smallest Ball (at prec) enclosing [lo, hi].
  static Ball from_endpoints(const mpfr_t lo, const mpfr_t hi, mpfr_prec_t prec);
  /// A Ball centred at mid with the given radius (radius rounded up).
  static Ball with_radius(const Ball& mid, double radius);

  mpfr_prec_t precision() const { return mpfr_get_prec(mid_); }
  const __mpfr_struct* mid() const { return mid_; }
  const __mpfr_struct* rad() const { return rad_; }

  double mid_double() const;
  /// Radius rounded up to a double.
  double rad_double() const;
  /// Lower and upper endpoints, rounded outward to double.
  double lower_double() const;
  double upper_double() const;
  /// Upper bound of |x| rounded up, lower bound of |x| rounded down.
  double mag_upper_double() const;
  double mag_lower_double() const;

  /// Endpoint values as point Balls (radius 0) at this Ball's precision.
  Ball lower() const;
  Ball upper() const;
  Ball mag_upper() const;
  Ball mag_lower() const;

  bool is_exact() const { return mpfr_zero_p(rad_) != 0; }
  bool contains_zero() const;
  bool contains(const Ball& other) const;
  bool contains(double value) const;
  bool overlaps(const Ball& other) const;
  /// Certified sign tests: true only if every point of the Ball qualifies.
  bool is_positive() const;
  bool is_negative() const;
  bool is_nonnegative() const;
  bool is_nonzero() const { return is_positive() || is_negative(); }
  /// Certified comparisons between enclosures.
  bool certainly_less(const Ball& other) const;
  bool certainly_less_equal(const Ball& other) const;

  /// Adds `extra` (rounded up) to the radius.
  void widen(const Ball& extra);
  void widen(double extra);
  /// Returns a copy at a different midpoint precision (rounding error tracked).
  Ball with_precision(mpfr_prec_t prec) const;

  /// Decimal rendering of the midpoint.
  std::string mid_string(int digits = 20) const;
  /// Decimal rendering of the radius (rounded up).
  std::string rad_string(int digits = 6) const;
  /// "[mid +/- rad]"
  std::string to_string(int digits = 20) const;

  Ball operator-() const;
  Ball& operator+=(const Ball& other);
  Ball& operator-=(const Ball& other);
  Ball& operator*=(const Ball& other);
  Ball& operator/=(const Ball& other);

  friend Ball operator+(const Ball& a, const Ball& b);
  friend Ball operator-(const Ball& a, const Ball& b);
  friend Ball operator*(const Ball& a, const Ball& b);
  friend Ball operator/(const Ball& a, const Ball& b);
  friend Ball operator+(const Ball& a, long b);
  friend Ball operator-(const Ball& a, long b);
  friend Ball operator-(long a, const Ball& b);
  friend Ball operator*(const Ball& a, long b);
  friend Ball operator*(long a, const Ball& b);
  friend Ball operator/(const Ball& a, long b);

 private:
  friend class BallAccess;
  mpfr_t mid_;
  mpfr_t rad_;
};

Ball pi(mpfr_prec_t prec);
Ball abs(const Ball& x);
Ball sqr(const Ball& x);
/// Requires x >= 0 on the whole Ball.
Ball sqrt(const Ball& x);
/// Clamps the negative part of the Ball to zero; use only when the exact
/// value is known to be nonnegative.
Ball sqrt_nonneg(const Ball& x);
Ball cbrt(const Ball& x);
Ball exp(const Ball& x);
/// Requires x > 0 on the whole Ball.
Ball log(const Ball& x);
Ball cos(const Ball& x);
Ball sin(const Ball& x);
Ball atan(const Ball& x);
/// Inputs are clamped to [-1, 1]; use only when the exact value lies there.
Ball acos_clamped(const Ball& x);
Ball asin_clamped(const Ball& x);
/// Angle of the point (x, y) for y >= 0, in [0, pi].
Ball atan2_upper_half(const Ball& y, const Ball& x);
Ball pow(const Ball& x, unsigned long n);
/// Hull of two Balls.
Ball hull(const Ball& a, const Ball& b);

}  // namespace sttrace
