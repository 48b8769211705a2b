#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sttrace/bessel.hpp"
#include "sttrace/calibration.hpp"
#include "sttrace/chebyshev.hpp"
#include "sttrace/error.hpp"
#include "sttrace/experiments.hpp"
#include "sttrace/kloosterman.hpp"
#include "sttrace/measures.hpp"
#include "sttrace/number_theory.hpp"
#include "sttrace/petersson.hpp"
#include "sttrace/report_io.hpp"
#include "sttrace/version.hpp"

namespace {

using namespace sttrace;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Globals {
  long precision_bits = 192;
  long max_k = 2500;
  std::string out = "-";
  std::string format = "csv";
};

std::string b2s(bool b) { return b ? "true" : "false"; }

std::string csv_row(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    const std::string& c = cells[i];
    if (c.find_first_of(",\"\n") == std::string::npos) {
      line += c;
    } else {
      line += '"';
      for (char ch : c) line += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      line += '"';
    }
  }
  return line + '\n';
}

std::string mid(const Ball& b) { return format_double(b.mid_double()); }
std::string rad(const Ball& b) { return format_double(b.rad_double()); }

void require_csv(const Globals& g, const char* command) {
  if (g.format != "csv") {
    throw Error(ErrorCode::InvalidArgument, std::string(command) + " only writes csv");
  }
}

// ---- verify kloosterman ----------------------------------------------------

struct KloostermanArgs {
  std::int64_t m = 1;
  std::int64_t n = 1;
  std::int64_t c_min = 1;
  std::int64_t c_max = 64;
};

int run_verify_kloosterman(const Globals& g, const KloostermanArgs& a) {
  require_csv(g, "verify kloosterman");
  if (a.c_min < 1 || a.c_max < a.c_min) throw Error(ErrorCode::InvalidArgument, "need 1 <= c-min <= c-max");
  std::string out = "m,n,c,value_mid,value_rad,is_zero,certificate\n";
  bool ok = true;
  for (std::int64_t c = a.c_min; c <= a.c_max; ++c) {
    const KloostermanResult r = brute_force_kloosterman(a.m, a.n, c, g.precision_bits);
    // The exact element and the numeric sum must agree, and a zero certificate must match the numerics.
    const bool consistent = r.numeric.overlaps(r.exact.real_value(g.precision_bits)) &&
                            (!r.certificate.is_zero() || r.numeric.contains_zero());
    ok = ok && consistent;
    out += csv_row({std::to_string(a.m), std::to_string(a.n), std::to_string(c), mid(r.numeric), rad(r.numeric),
                    b2s(r.certificate.is_zero()), r.certificate.describe()});
  }
  write_text(g.out, out);
  return ok ? kExitOk : kExitFail;
}

// ---- verify bessel ---------------------------------------------------------

int run_verify_bessel(const Globals& g, std::vector<long> orders, std::vector<double> xs, bool quick) {
  require_csv(g, "verify bessel");
  const mpfr_prec_t P = g.precision_bits;
  if (orders.empty()) orders = {10, 50, 100, 200, 400};
  if (xs.empty()) xs = {0.1, 0.25, 0.5, 0.75, 0.9, 1.0};
  std::string out = "a,x_mid,value_mid,value_rad,method,lemma_check,pass\n";
  bool ok = true;
  auto emit = [&](long a, const Ball& x, const BesselEval& e, const std::string& check, bool pass) {
    ok = ok && pass;
    out += csv_row({std::to_string(a), mid(x), mid(e.value), rad(e.value), std::string(to_string(e.method)), check,
                    b2s(pass)});
  };
  for (long a : orders) {
    for (double x : xs) {
      const Ball ax = Ball::from_double(x, P) * a;
      const BesselEval e = bessel_j(a, ax, P);
      emit(a, ax, e, "ratio_bound", verify_ratio_bound(a, x, P));
    }
  }
  std::vector<long> scaling = {50, 100, 200, 400, 800, 1200, 1600, 2000};
  std::vector<long> transition = {64, 216, 512, 1000, 1728};
  if (quick) {
    scaling = {50, 200};
    transition = {64, 216};
  }
  for (long a : scaling) {
    const Ball x = Ball::from_int(a, P);
    const BesselEval e = bessel_j(a, x, P);
    const Ball s = e.value * cbrt(Ball::from_int(a, P));
    emit(a, x, e, "scaling[0.3,0.5]", Ball::from_rational(3, 10, P).certainly_less_equal(s.lower()) &&
                                         s.upper().certainly_less_equal(Ball::from_rational(1, 2, P)));
    const BesselEval b = bessel_j_backward(a, x, P);
    emit(a, x, b, "cross_method", b.value.overlaps(e.value));
  }
  for (long a : transition) {
    for (double d : {-0.9, -0.5, 0.0, 0.5, 0.9}) {
      const Ball v = transition_eval(a, d, P);
      const Ball x = Ball::from_int(a, P) + Ball::from_double(d, P) * cbrt(Ball::from_int(a, P));
      BesselEval e;
      e.order = a;
      e.argument = x;
      e.value = v;
      const Ball s = v * cbrt(Ball::from_int(a, P));
      emit(a, x, e, "transition[0.1,0.8]", Ball::from_rational(1, 10, P).certainly_less_equal(s.lower()) &&
                                               s.upper().certainly_less_equal(Ball::from_rational(4, 5, P)));
    }
  }
  write_text(g.out, out);
  return ok ? kExitOk : kExitFail;
}

// ---- verify measures -------------------------------------------------------

int run_verify_measures(const Globals& g, int max_n) {
  require_csv(g, "verify measures");
  const mpfr_prec_t P = g.precision_bits;
  const Calibration cal = default_calibration();
  const double tol = 1e-10;
  std::string out = "check,measure,index,value_mid,value_rad,pass\n";
  bool ok = true;
  auto emit = [&](const std::string& check, const std::string& measure, int index, const Ball& v, bool pass) {
    ok = ok && pass;
    out += csv_row({check, measure, std::to_string(index), mid(v), rad(v), b2s(pass)});
  };
  const std::vector<MeasureSpec> all = {MeasureSpec::mu_infinity(), MeasureSpec::mu_infinity_2(), MeasureSpec::mu_p(3),
                                        MeasureSpec::mu_p(5),       MeasureSpec::mu_p(7),          MeasureSpec::mu_p_squared(3),
                                        MeasureSpec::mu_p_squared(5)};
  for (const auto& mu : all) {
    const Ball mass = integrate_poly(IntPolynomial::monomial(1, 0), mu, P);
    emit("mass", mu.name(), 0, mass, mass.rad_double() < tol && std::fabs(mass.mid_double() - 1.0) < tol);
  }
  for (int n = 0; n <= max_n; ++n) {
    const Ball v = integrate_poly(chebyshev_x(n), MeasureSpec::mu_infinity(), P);
    emit("orthogonality_X", "mu_inf", n, v, v.rad_double() < tol && v.contains(n == 0 ? 1.0 : 0.0));
  }
  for (int n = 0; n <= std::min(max_n, 10); ++n) {
    const Ball v = integrate_poly(poly_q(2 * n + 1), MeasureSpec::mu_infinity_2(), P);
    emit("odd_Q_moment", "mu_inf2", 2 * n + 1, v, v.rad_double() < tol && v.contains(0.0));
  }
  for (int m = 1; m <= 50; ++m) {
    const bool same = verify_composition(m);
    emit("composition", "", m, Ball::from_int(same ? 1 : 0, 64), same);
  }
  for (int n : {1, 10, 40}) {
    const DerivativeBounds d = derivative_bound_check(n);
    emit("q_derivative_ratio", "", n, Ball::from_double(d.q_derivative_ratio, 64), d.q_derivative_ratio <= cal.q_derivative_cap);
    emit("q_endpoint_ratio", "", n, Ball::from_double(d.q_endpoint_ratio, 64), d.q_endpoint_ratio <= cal.q_endpoint_cap);
    emit("x_derivative_ratio", "", n, Ball::from_double(d.x_derivative_ratio, 64), d.x_derivative_ratio <= cal.x_derivative_cap);
  }
  write_text(g.out, out);
  return ok ? kExitOk : kExitFail;
}

// ---- petersson -------------------------------------------------------------

struct PeterssonArgs {
  long k = 12;
  std::int64_t N = 1;
  std::int64_t m = 1;
  std::int64_t n = 1;
  long trunc = 0;
};

int run_petersson(const Globals& g, const PeterssonArgs& a) {
  if (g.format != "json") throw Error(ErrorCode::InvalidArgument, "petersson only writes json");
  const long B = a.trunc > 0 ? a.trunc : default_truncation(a.k, a.N, a.m, a.n);
  const PeterssonValue v = delta_truncated(a.k, a.N, a.m, a.n, B, g.precision_bits);
  const Ball main = v.terms.front().contribution;
  Ball rest = Ball::from_int(0, g.precision_bits);
  for (std::size_t i = 1; i < v.terms.size(); ++i) rest += v.terms[i].contribution;
  rest.widen(v.tail);
  nlohmann::json j = {{"k", a.k},
                      {"N", a.N},
                      {"m", a.m},
                      {"n", a.n},
                      {"truncation", B},
                      {"precision_bits", g.precision_bits},
                      {"value_mid", v.value.mid_double()},
                      {"value_rad", v.value.rad_double()},
                      {"value", v.value.to_string(30)},
                      {"tail_bound", v.tail_bound},
                      {"window_ok", in_window(a.k, a.N, a.m, a.n)},
                      {"main_term_mid", main.mid_double()},
                      {"remainder_mid", rest.mid_double()},
                      {"remainder_rad", rest.rad_double()},
                      {"envelope", error_envelope(a.k)}};
  write_text(g.out, j.dump(2) + "\n");
  return kExitOk;
}

// ---- measures --------------------------------------------------------------

struct MeasuresArgs {
  std::string measure = "mu_inf";
  std::string what = "density";
  int points = 21;
  std::string poly = "X:2";
};

IntPolynomial parse_poly(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw Error(ErrorCode::InvalidArgument, "polynomial must look like X:n, Y:n or Q:n");
  const std::string fam = s.substr(0, colon);
  int idx = 0;
  try {
    idx = std::stoi(s.substr(colon + 1));
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidArgument, "bad polynomial index in " + s);
  }
  if (idx < 0) throw Error(ErrorCode::InvalidArgument, "polynomial index must be nonnegative");
  if (fam == "X") return chebyshev_x(idx);
  if (fam == "Y") return poly_y(idx);
  if (fam == "Q") return poly_q(idx);
  throw Error(ErrorCode::InvalidArgument, "unknown polynomial family " + fam);
}

int run_measures(const Globals& g, const MeasuresArgs& a) {
  require_csv(g, "measures");
  const MeasureSpec mu = MeasureSpec::parse(a.measure);
  const mpfr_prec_t P = g.precision_bits;
  std::string out;
  if (a.what == "moment") {
    const Ball v = integrate_poly(parse_poly(a.poly), mu, P);
    out = "measure,poly,value_mid,value_rad\n" + csv_row({mu.name(), a.poly, mid(v), rad(v)});
  } else if (a.what == "density" || a.what == "cdf") {
    if (a.points < 2) throw Error(ErrorCode::InvalidArgument, "points must be >= 2");
    out = "measure,x,value_mid,value_rad\n";
    const long lo = mu.support_lo(), hi = mu.support_hi();
    for (int i = 0; i < a.points; ++i) {
      // Open grid for the density (it is singular at -1 for the [-1,3] measures).
      const Ball x = a.what == "cdf"
                         ? Ball::from_int(lo, P) + Ball::from_rational((hi - lo) * i, a.points - 1, P)
                         : Ball::from_int(lo, P) + Ball::from_rational((hi - lo) * (2 * i + 1), 2 * a.points, P);
      const Ball v = a.what == "cdf" ? cdf(mu, x) : density(mu, x);
      out += csv_row({mu.name(), mid(x), mid(v), rad(v)});
    }
  } else {
    throw Error(ErrorCode::InvalidArgument, "--what must be density, cdf or moment");
  }
  write_text(g.out, out);
  return kExitOk;
}

// ---- thm1 / thm2 -----------------------------------------------------------

struct ExperimentArgs {
  std::int64_t p = 3;
  std::int64_t N = 5;
  int n_max = 6;
};

int run_experiment(const Globals& g, const ExperimentArgs& a, Theorem which) {
  const ReportFormat fmt = parse_report_format(g.format);
  if (!level_in_scope(a.N)) {
    std::cerr << "warning: level " << a.N << " has 2-adic valuation > 2; nonvanishing is not guaranteed\n";
  }
  ExperimentOptions o;
  o.precision_bits = g.precision_bits;
  o.max_k = g.max_k;
  const ExperimentReport r =
      which == Theorem::One ? theorem1_experiment(a.p, a.N, a.n_max, o) : theorem2_experiment(a.p, a.N, a.n_max, o);
  emit_report(r, fmt, g.out);
  return r.all_pass() ? kExitOk : kExitFail;
}

// ---- calibrate -------------------------------------------------------------

int run_calibrate(const Globals& g) {
  // The grid on which the frozen constants in calibration.hpp were measured.
  struct Case {
    std::int64_t p, N;
  };
  const std::vector<Case> cases = {{3, 5}, {5, 6}, {5, 3}, {3, 4}, {7, 4}, {5, 12}, {7, 3}, {11, 5}, {3, 7}};
  ExperimentOptions o;
  o.precision_bits = g.precision_bits;
  o.max_k = g.max_k;
  double r1 = INFINITY, r2 = INFINITY, gap = INFINITY, head = 0.0, env = 0.0;
  for (const auto& c : cases) {
    const int n1 = static_cast<int>(std::floor(std::log(g.max_k * c.N / (4 * M_PI)) / std::log(double(c.p))));
    const int n2 = std::max(0, (n1 - 1) / 2);
    for (const auto& row : theorem1_experiment(c.p, c.N, n1, o).rows) {
      if (!row.proxy) continue;
      r1 = std::min(r1, *row.proxy / *row.bound);
      gap = std::min(gap, *row.gap);
    }
    for (const auto& row : theorem2_experiment(c.p, c.N, n2, o).rows) {
      if (!row.proxy) continue;
      r2 = std::min(r2, *row.proxy / *row.bound);
      gap = std::min(gap, *row.gap);
      if (row.head && row.head_bound && *row.head_bound > 0) head = std::max(head, *row.head / *row.head_bound);
    }
  }
  for (std::int64_t p : {3, 5}) {
    for (std::int64_t N : {3, 4, 5, 6}) {
      if (gcd(p, N) != 1) continue;
      for (const auto& w : weight_sequence(p, N, 8, Theorem::One)) {
        if (w.k < 28 || w.k > 600 || !w.window_ok) continue;
        const std::int64_t n = ipow(p, static_cast<unsigned>(2 * w.n));
        const AsymptoticCheck a = asymptotic_check(w.k, N, 1, n, g.precision_bits, 1.0);
        env = std::max(env, a.remainder.mag_upper_double() / a.error_envelope);
      }
    }
  }
  const Calibration c = default_calibration();
  nlohmann::json j = {
      {"measured",
       {{"min_proxy_over_bound_thm1", r1},
        {"min_proxy_over_bound_thm2", r2},
        {"min_scaled_gap", gap},
        {"max_head_over_envelope", head},
        {"max_remainder_over_envelope", env}}},
      {"frozen",
       {{"theorem1_constant", c.theorem1_constant},
        {"theorem2_constant", c.theorem2_constant},
        {"gap_floor", c.gap_floor},
        {"head_constant", c.head_constant},
        {"envelope_constant", c.envelope_constant}}},
      {"consistent",
       r1 >= c.theorem1_constant && r2 >= c.theorem2_constant && gap >= c.gap_floor && env <= c.envelope_constant}};
  write_text(g.out, j.dump(2) + "\n");
  return j["consistent"].get<bool>() ? kExitOk : kExitFail;
}

bool usage_error(ErrorCode code) {
  return code == ErrorCode::InvalidArgument || code == ErrorCode::InvalidModulus || code == ErrorCode::NotCoprime ||
         code == ErrorCode::Overflow || code == ErrorCode::WindowViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified Petersson, Kloosterman and Bessel computations", "sttrace"};
  app.set_version_flag("--version", version_string());
  app.set_config("--config", "", "key=value file with default flag values");
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--precision-bits", g.precision_bits, "Output precision in bits")
      ->check(CLI::Range(64L, 1L << 15))
      ->capture_default_str();
  app.add_option("--max-k", g.max_k, "Skip rows whose weight exceeds this")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--out", g.out, "Output path, - for stdout")->capture_default_str();
  app.add_option("--format", g.format, "csv, json or svg")->check(CLI::IsMember({"csv", "json", "svg"}));

  auto* verify = app.add_subcommand("verify", "Verification sweeps");
  verify->require_subcommand(1);

  KloostermanArgs ka;
  auto* vk = verify->add_subcommand("kloosterman", "Exact Kloosterman sums S(m,n,c) over a range of c");
  vk->add_option("--m", ka.m)->capture_default_str();
  vk->add_option("--n", ka.n)->capture_default_str();
  vk->add_option("--c-min", ka.c_min)->capture_default_str();
  vk->add_option("--c-max", ka.c_max)->capture_default_str();

  std::vector<long> b_orders;
  std::vector<double> b_xs;
  bool b_quick = false;
  auto* vb = verify->add_subcommand("bessel", "Ratio, scaling, transition and cross-method checks");
  vb->add_option("--orders", b_orders, "Orders for the ratio-bound grid")->delimiter(',');
  vb->add_option("--xs", b_xs, "x in (0,1] for the ratio-bound grid")->delimiter(',');
  vb->add_flag("--quick", b_quick, "Smaller scaling and transition grids");

  int m_max_n = 30;
  auto* vm = verify->add_subcommand("measures", "Masses, orthogonality, composition and derivative caps");
  vm->add_option("--max-n", m_max_n)->check(CLI::NonNegativeNumber)->capture_default_str();

  PeterssonArgs pa;
  auto* pet = app.add_subcommand("petersson", "Truncated Petersson sum with certified tail (JSON)");
  pet->add_option("--k", pa.k)->required();
  pet->add_option("--N", pa.N)->required();
  pet->add_option("--m", pa.m)->required();
  pet->add_option("--n", pa.n)->required();
  pet->add_option("--trunc", pa.trunc, "B (default: twice the smallest B with x_B <= 5/18)");

  MeasuresArgs ma;
  auto* meas = app.add_subcommand("measures", "Density, cdf or polynomial moment of a limit measure");
  meas->add_option("--measure", ma.measure, "mu_inf, mu_inf2, mu_p:P, mu_p2:P")->capture_default_str();
  meas->add_option("--what", ma.what, "density, cdf or moment")->capture_default_str();
  meas->add_option("--points", ma.points)->capture_default_str();
  meas->add_option("--poly", ma.poly, "X:n, Y:n or Q:n")->capture_default_str();

  ExperimentArgs e1, e2;
  e2.n_max = 2;
  auto* t1 = app.add_subcommand("thm1", "Delta(1, p^{2n}) along k_n = [4 pi p^n / N]");
  t1->add_option("--p", e1.p)->capture_default_str();
  t1->add_option("--N", e1.N)->capture_default_str();
  t1->add_option("--n-max", e1.n_max)->capture_default_str();
  auto* t2 = app.add_subcommand("thm2", "sum_{i<=n} Delta(1, p^{4i+2}) along k_n = [4 pi p^{2n+1} / N]");
  t2->add_option("--p", e2.p)->capture_default_str();
  t2->add_option("--N", e2.N)->capture_default_str();
  t2->add_option("--n-max", e2.n_max)->capture_default_str();

  auto* cal = app.add_subcommand("calibrate", "Measure the constants frozen in the library");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*vk) return run_verify_kloosterman(g, ka);
    if (*vb) return run_verify_bessel(g, b_orders, b_xs, b_quick);
    if (*vm) return run_verify_measures(g, m_max_n);
    if (*pet) {
      if (!app.get_option("--format")->count()) g.format = "json";
      return run_petersson(g, pa);
    }
    if (*meas) return run_measures(g, ma);
    if (*t1) return run_experiment(g, e1, Theorem::One);
    if (*t2) return run_experiment(g, e2, Theorem::Two);
    if (*cal) {
      if (!app.get_option("--format")->count()) g.format = "json";
      return run_calibrate(g);
    }
  } catch (const Error& e) {
    std::cerr << "sttrace: " << e.what() << '\n';
    return usage_error(e.code()) ? kExitUsage : kExitFail;
  } catch (const std::exception& e) {
    std::cerr << "sttrace: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}
