#pragma once

#include <functional>
#include <string_view>

#include "sttrace/ball.hpp"

namespace sttrace {

enum class BesselMethod { Series, BackwardRecurrence };
std::string_view to_string(BesselMethod m);

struct BesselEval {
  long order = 0;
  Ball argument;
  Ball value;
  BesselMethod method = BesselMethod::Series;
  mpfr_prec_t precision_bits = kDefaultPrecision;
  /// Precision actually used for the final attempt.
  mpfr_prec_t working_precision = kDefaultPrecision;
  /// False for the backward recurrence, whose radius is an estimate.
  bool rigorous = true;
};

/// Returns the argument as a Ball at the requested working precision, so
/// that arguments such as a + d a^{1/3} are not limited by a fixed precision.
using ArgumentFn = std::function<Ball(mpfr_prec_t)>;

/// Upper limit on the internal working precision of the series.
inline constexpr mpfr_prec_t kMaxBesselPrecision = 1 << 16;

/// J_a(x) from the power series. The series is summed at the exact midpoint of
/// x with an alternating-tail bound; the input radius is then added using
/// |J_a'| <= 1. Working precision grows until the result has about
/// precision_bits relative accuracy (or 2^{-2 precision_bits} absolute accuracy
/// near a zero). Throws PrecisionExhausted beyond kMaxBesselPrecision.
BesselEval bessel_j(long a, const Ball& x, mpfr_prec_t precision_bits);
BesselEval bessel_j(long a, const ArgumentFn& x, mpfr_prec_t precision_bits);

/// Miller's backward recurrence normalized by J_0 + 2 sum J_{2k} = 1. The
/// radius is twice the difference between two start orders: an estimate only.
BesselEval bessel_j_backward(long a, const Ball& x, mpfr_prec_t precision_bits);

/// J_a(a + d a^{1/3}).
Ball transition_eval(long a, double d, mpfr_prec_t precision_bits);

/// Certifies 1 <= J_a(a x) / (x^a J_a(a)) <= e^{a(1-x)} for 0 < x <= 1,
/// retrying at higher precision when the enclosures are inconclusive.
bool verify_ratio_bound(long a, double x, mpfr_prec_t precision_bits);

}  // namespace sttrace
