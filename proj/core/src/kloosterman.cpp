#include "sttrace/kloosterman.hpp"

#include <cmath>
#include <sstream>

#include "sttrace/error.hpp"

namespace sttrace {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

}  // namespace

std::string Certificate::name() const {
  return std::visit(Overloaded{
                        [](const ZeroExact&) { return std::string("ZeroExact"); },
                        [](const NonzeroByCyclotomic&) { return std::string("NonzeroByCyclotomic"); },
                        [](const NonzeroByPrimeReduction&) { return std::string("NonzeroByPrimeReduction"); },
                        [](const NonzeroBySalie&) { return std::string("NonzeroBySalie"); },
                        [](const NonzeroByTable&) { return std::string("NonzeroByTable"); },
                        [](const NonzeroByProduct&) { return std::string("NonzeroByProduct"); },
                    },
                    kind);
}

std::string Certificate::describe() const {
  std::ostringstream out;
  out << name();
  std::visit(Overloaded{
                 [](const ZeroExact&) {},
                 [](const NonzeroByCyclotomic&) {},
                 [&](const NonzeroByPrimeReduction& c) { out << "(q=" << c.prime << ";residue=" << c.residue << ")"; },
                 [&](const NonzeroBySalie& c) { out << "(" << c.value.to_string(12) << ")"; },
                 [&](const NonzeroByTable& c) { out << "(l=" << c.modulus << ";value=" << c.value << ")"; },
                 [&](const NonzeroByProduct& c) {
                   out << "(";
                   for (std::size_t i = 0; i < c.factors.size(); ++i) out << (i ? ";" : "") << c.factors[i].describe();
                   out << ")";
                 },
             },
             kind);
  return out.str();
}

CyclotomicElement kloosterman_exact(std::int64_t m, std::int64_t n, std::int64_t c) {
  if (c < 1) throw Error(ErrorCode::InvalidModulus, "Kloosterman modulus must be positive");
  CyclotomicElement e(c);
  const std::int64_t mr = mod(m, c), nr = mod(n, c);
  for (std::int64_t x = 0; x < c; ++x) {
    if (gcd(x, c) != 1) continue;
    const std::int64_t xbar = mod_inverse(x, c);
    e.add_root(mulmod(mr, x, c) + mulmod(nr, xbar, c));
  }
  return e;
}

KloostermanResult brute_force_kloosterman(std::int64_t m, std::int64_t n, std::int64_t c, mpfr_prec_t prec) {
  KloostermanResult r;
  r.m = m;
  r.n = n;
  r.c = c;
  r.exact = kloosterman_exact(m, n, c);
  r.numeric = r.exact.real_value(prec);
  r.certificate = is_zero_exact(r.exact) ? Certificate{ZeroExact{}} : Certificate{NonzeroByCyclotomic{}};
  return r;
}

Ball salie_evaluate(std::int64_t a, std::int64_t b, std::int64_t q, int beta, mpfr_prec_t prec) {
  if (q < 3 || q % 2 == 0 || !is_prime(q)) throw Error(ErrorCode::InvalidModulus, "Salie formula needs an odd prime");
  if (beta < 2) throw Error(ErrorCode::InvalidModulus, "Salie formula needs exponent >= 2");
  if (mod(a, q) == 0 || mod(b, q) == 0) throw Error(ErrorCode::InvalidArgument, "q must not divide a*b");
  const std::int64_t l = ipow(q, static_cast<unsigned>(beta));
  const std::int64_t root = sqrt_mod_prime_power(mulmod(a, b, l), q, beta);
  const int sign = jacobi_symbol(root, l);
  const Ball theta = pi(prec) * 4 * root / l;
  // Re(e^{i theta}) = cos theta, Re(i e^{i theta}) = -sin theta.
  const Ball re = (l % 4 == 1) ? cos(theta) : -sin(theta);
  return sqrt(Ball::from_int(l, prec)) * re * (2 * sign);
}

DecompositionPlan decompose(std::int64_t p, int n, std::int64_t N) {
  if (N < 1) throw Error(ErrorCode::InvalidModulus, "level must be positive");
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "exponent must be nonnegative");
  if (gcd(p, N) != 1) throw Error(ErrorCode::NotCoprime, "gcd(p, N) must be 1");
  DecompositionPlan plan;
  plan.p = p;
  plan.n = n;
  plan.level = N;
  plan.prime_powers = factorize(N);
  plan.multipliers.push_back(1);
  std::int64_t remaining = N;
  const std::size_t t = plan.prime_powers.size();
  for (std::size_t i = 0; i < t; ++i) {
    const std::int64_t l = plan.prime_powers[i].value;
    remaining /= l;
    plan.cofactors.push_back(remaining);
    const std::int64_t m_prev = plan.multipliers.back();
    const std::int64_t a = mulmod(m_prev, mod_inverse(remaining, l), l);
    const std::int64_t b = mulmod(a, powmod(p, 2 * static_cast<std::uint64_t>(n), l), l);
    plan.factors.push_back({a, b, l});
    if (i + 1 < t) plan.multipliers.push_back(mulmod(m_prev, mod_inverse(l, remaining), remaining));
  }
  return plan;
}

bool verify_decomposition(const DecompositionPlan& plan) {
  std::vector<CyclotomicElement> parts;
  for (const auto& f : plan.factors) parts.push_back(kloosterman_exact(f.a, f.b, f.modulus));
  const CyclotomicElement product = multiply_all(parts);
  const std::int64_t pn = powmod(plan.p, 2 * static_cast<std::uint64_t>(plan.n), plan.level);
  const CyclotomicElement whole = embed(kloosterman_exact(1, pn, plan.level), product.modulus);
  return is_zero_exact(subtract(product, whole));
}

namespace {

Certificate certify_factor(const KloostermanFactor& f, const PrimePower& pp) {
  const CyclotomicElement exact = kloosterman_exact(f.a, f.b, f.modulus);
  const bool zero = is_zero_exact(exact);
  if (zero) return {ZeroExact{}};
  if (pp.prime == 2) {
    if (pp.exponent <= 2) {
      // The value is a rational integer; round the certified enclosure.
      const Ball v = exact.real_value();
      return {NonzeroByTable{f.modulus, std::llround(v.mid_double())}};
    }
    return {NonzeroByCyclotomic{}};
  }
  if (pp.exponent == 1) {
    const std::int64_t residue = mod(exact.coefficient_sum(), pp.prime);
    if (residue == pp.prime - 1) return {NonzeroByPrimeReduction{pp.prime, residue}};
    return {NonzeroByCyclotomic{}};
  }
  try {
    Ball s = salie_evaluate(f.a, f.b, pp.prime, pp.exponent);
    if (s.is_nonzero()) return {NonzeroBySalie{std::move(s)}};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoSquareRoot) throw;
  }
  return {NonzeroByCyclotomic{}};
}

}  // namespace

Certificate nonvanishing_certificate(std::int64_t p, int n, std::int64_t N) {
  if (gcd(p, N) != 1) throw Error(ErrorCode::NotCoprime, "gcd(p, N) must be 1");
  if (N == 1) return {NonzeroByTable{1, 1}};
  const DecompositionPlan plan = decompose(p, n, N);
  NonzeroByProduct product;
  for (std::size_t i = 0; i < plan.factors.size(); ++i) {
    Certificate c = certify_factor(plan.factors[i], plan.prime_powers[i]);
    if (c.is_zero()) return c;
    product.factors.push_back(std::move(c));
  }
  if (product.factors.size() == 1) return std::move(product.factors.front());
  return {std::move(product)};
}

}  // namespace sttrace
