#include "sttrace/measures.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sttrace/error.hpp"
#include "sttrace/number_theory.hpp"

namespace sttrace {

MeasureSpec MeasureSpec::mu_p(long p) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, "mu_p needs a prime p");
  return {MeasureKind::MuP, p};
}

MeasureSpec MeasureSpec::mu_p_squared(long p) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, "mu_p2 needs a prime p");
  return {MeasureKind::MuPSquared, p};
}

MeasureSpec MeasureSpec::parse(const std::string& text) {
  if (text == "mu_inf") return mu_infinity();
  if (text == "mu_inf2") return mu_infinity_2();
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    const std::string head = text.substr(0, colon);
    long p = 0;
    try {
      p = std::stol(text.substr(colon + 1));
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "bad prime in measure name: " + text);
    }
    if (head == "mu_p") return mu_p(p);
    if (head == "mu_p2") return mu_p_squared(p);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown measure: " + text + " (expected mu_inf, mu_inf2, mu_p:P, mu_p2:P)");
}

long MeasureSpec::support_lo() const {
  return (kind == MeasureKind::MuP || kind == MeasureKind::MuInfinity) ? -2 : -1;
}

long MeasureSpec::support_hi() const {
  return (kind == MeasureKind::MuP || kind == MeasureKind::MuInfinity) ? 2 : 3;
}

std::string MeasureSpec::name() const {
  switch (kind) {
    case MeasureKind::MuP: return "mu_p:" + std::to_string(p);
    case MeasureKind::MuInfinity: return "mu_inf";
    case MeasureKind::MuPSquared: return "mu_p2:" + std::to_string(p);
    case MeasureKind::MuInfinity2: return "mu_inf2";
  }
  return "?";
}

namespace {

// (sqrt p + 1/sqrt p)^2 = p + 2 + 1/p
Ball shifted_square(long p, mpfr_prec_t prec) { return Ball::from_int(p + 2, prec) + Ball::from_rational(1, p, prec); }

}  // namespace

Ball density(const MeasureSpec& mu, const Ball& x) {
  const mpfr_prec_t prec = x.precision();
  const Ball lo = Ball::from_int(mu.support_lo(), prec);
  const Ball hi = Ball::from_int(mu.support_hi(), prec);
  if (x.certainly_less(lo) || hi.certainly_less(x)) return Ball::from_int(0, prec);
  const Ball one = Ball::from_int(1, prec);
  switch (mu.kind) {
    case MeasureKind::MuInfinity:
      return sqrt_nonneg(one - sqr(x / 2)) / pi(prec);
    case MeasureKind::MuP:
      return sqrt_nonneg(one - sqr(x / 2)) * (mu.p + 1) / (pi(prec) * (shifted_square(mu.p, prec) - sqr(x)));
    case MeasureKind::MuInfinity2:
      return sqrt_nonneg((3 - x) / (x + 1)) / (pi(prec) * 2);
    case MeasureKind::MuPSquared:
      return sqrt_nonneg((3 - x) / (x + 1)) * (mu.p + 1) /
             (pi(prec) * 2 * (shifted_square(mu.p, prec) - (x + 1)));
  }
  return Ball::from_int(0, prec);
}

namespace {

// Closed-form distribution function at a point strictly inside the support.
Ball cdf_inside(const MeasureSpec& mu, const Ball& x) {
  const mpfr_prec_t prec = x.precision();
  const Ball one = Ball::from_int(1, prec);
  const Ball PI = pi(prec);
  switch (mu.kind) {
    case MeasureKind::MuInfinity: {
      const Ball h = x / 2;
      return Ball::from_rational(1, 2, prec) + (asin_clamped(h) + h * sqrt_nonneg(one - sqr(h))) / PI;
    }
    case MeasureKind::MuInfinity2: {
      const Ball c = (x - 1) / 2;
      return (PI - acos_clamped(c) + sqrt_nonneg(one - sqr(c))) / PI;
    }
    case MeasureKind::MuP: {
      const Ball c = x / 2;
      const Ball s = sqrt_nonneg(one - sqr(c));
      const Ball theta = acos_clamped(c);
      const Ball r = Ball::from_rational(mu.p + 1, mu.p - 1, prec);
      const Ball phi = atan2_upper_half(r * s, c);
      return one - (theta * (mu.p + 1) - phi * (mu.p - 1)) / (PI * 2);
    }
    case MeasureKind::MuPSquared: {
      const Ball c = (x - 1) / 2;
      const Ball s = sqrt_nonneg(one - sqr(c));
      const Ball theta = acos_clamped(c);
      const Ball r = Ball::from_rational(mu.p + 1, mu.p - 1, prec);
      // atan(r tan(theta/2)) with tan(theta/2) = sin / (1 + cos)
      const Ball phi = atan(r * s / (one + c));
      return one - (theta * (mu.p + 1) / (PI * 2) - phi * (mu.p - 1) / PI);
    }
  }
  return Ball::from_int(0, prec);
}

Ball cdf_point(const MeasureSpec& mu, const Ball& t) {
  const mpfr_prec_t prec = t.precision();
  if (!Ball::from_int(mu.support_lo(), prec).certainly_less(t)) return Ball::from_int(0, prec);
  if (!t.certainly_less(Ball::from_int(mu.support_hi(), prec))) return Ball::from_int(1, prec);
  return cdf_inside(mu, t);
}

}  // namespace

Ball cdf(const MeasureSpec& mu, const Ball& x) {
  // Monotone: evaluate at the two endpoints.
  if (x.is_exact()) return cdf_point(mu, x);
  return hull(cdf_point(mu, x.lower()), cdf_point(mu, x.upper()));
}

Ball interval_mass(const MeasureSpec& mu, const Ball& lo, const Ball& hi) { return cdf(mu, hi) - cdf(mu, lo); }

namespace {

// sum_i |c_i| y^i for y >= 0.
Ball abs_poly(const IntPolynomial& f, const Ball& y) {
  Ball acc = Ball::from_int(0, y.precision());
  for (int i = f.degree(); i >= 0; --i) acc = acc * y + Ball::from_mpz(abs(f.coeff(i)), y.precision());
  return acc;
}

constexpr long kMaxNodes = 1L << 20;

}  // namespace

Ball integrate_poly(const IntPolynomial& f, const MeasureSpec& mu, mpfr_prec_t prec) {
  const long deg = std::max(0, f.degree());
  const Ball two_pi = pi(prec) * 2;
  const Ball one = Ball::from_int(1, prec);
  auto node_cos = [&](long j, long M) { return cos(two_pi * j / M); };

  if (mu.kind == MeasureKind::MuInfinity || mu.kind == MeasureKind::MuInfinity2) {
    // Exact for trigonometric polynomials of degree < M.
    const long M = deg + 4;
    Ball sum = Ball::from_int(0, prec);
    for (long j = 0; j < M; ++j) {
      const Ball c = node_cos(j, M);
      if (mu.kind == MeasureKind::MuInfinity) {
        sum += f.evaluate(c * 2) * (one - sqr(c));
      } else {
        sum += f.evaluate(c * 2 + 1) * (one - c);
      }
    }
    return mu.kind == MeasureKind::MuInfinity ? sum * 2 / M : sum / M;
  }

  const long p = mu.p;
  const Ball logp = log(Ball::from_int(p, prec));
  // Poles of the integrand sit at |Im t| = tau; the rule is bounded on |Im t| <= sigma.
  const Ball tau = (mu.kind == MeasureKind::MuP) ? logp / 2 : logp;
  const Ball sigma = tau / 2;
  auto cosh = [&](const Ball& v) { return (exp(v) + exp(-v)) / 2; };
  const Ball ch_s = cosh(sigma);
  const Ball gap = cosh(tau) - ch_s;
  Ball K(prec), scale(prec);
  if (mu.kind == MeasureKind::MuP) {
    K = abs_poly(f, ch_s * 2) * sqr(ch_s) / (sqr(gap) * 4);
    scale = Ball::from_int(4 * (p + 1), prec);
  } else {
    K = abs_poly(f, ch_s * 2 + 1) * (ch_s + 1) / (gap * 2);
    scale = Ball::from_int(2 * (p + 1), prec);
  }
  const Ball CK = scale * K;
  // Smallest M with CK / (e^{sigma M} - 1) <= 2^{-prec}.
  const double need = (log(CK).upper_double() + static_cast<double>(prec) * std::log(2.0) + 1.0) / sigma.lower_double();
  const long M = std::max<long>(deg + 4, static_cast<long>(std::ceil(need)) + 1);
  if (!(need < static_cast<double>(kMaxNodes))) {
    throw Error(ErrorCode::QuadratureNotConverged, "quadrature needs more than " + std::to_string(kMaxNodes) + " nodes");
  }
  const Ball s2 = shifted_square(p, prec);
  const Ball pp = Ball::from_int(p, prec) + Ball::from_rational(1, p, prec);
  Ball sum = Ball::from_int(0, prec);
  for (long j = 0; j < M; ++j) {
    const Ball c = node_cos(j, M);
    if (mu.kind == MeasureKind::MuP) {
      sum += f.evaluate(c * 2) * (one - sqr(c)) / (s2 - sqr(c) * 4);
    } else {
      sum += f.evaluate(c * 2 + 1) * (one - c) / (pp - c * 2);
    }
  }
  Ball result = mu.kind == MeasureKind::MuP ? sum * (2 * (p + 1)) / M : sum * (p + 1) / M;
  result.widen(CK / (exp(sigma * M) - 1));
  return result;
}

double discrepancy_grid(const MeasureSpec& mu1, const MeasureSpec& mu2, int points) {
  if (points < 2) throw Error(ErrorCode::InvalidArgument, "discrepancy grid needs at least 2 points");
  const long lo = std::min(mu1.support_lo(), mu2.support_lo());
  const long hi = std::max(mu1.support_hi(), mu2.support_hi());
  const mpfr_prec_t prec = 64;
  double dmax = 0.0, dmin = 0.0;
  for (int i = 0; i < points; ++i) {
    const Ball x = Ball::from_int(lo, prec) + Ball::from_rational((hi - lo) * i, points - 1, prec);
    const double d = (cdf(mu1, x) - cdf(mu2, x)).mid_double();
    dmax = std::max(dmax, d);
    dmin = std::min(dmin, d);
  }
  return dmax - dmin;
}

}  // namespace sttrace
