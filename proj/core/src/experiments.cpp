#include "sttrace/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <mutex>
#include <thread>

#include "sttrace/error.hpp"
#include "sttrace/kloosterman.hpp"
#include "sttrace/number_theory.hpp"
#include "sttrace/petersson.hpp"
#include "sttrace/version.hpp"

namespace sttrace {

unsigned worker_count() {
  if (const char* env = std::getenv("STTRACE_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 1024) return static_cast<unsigned>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(worker_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> threads;
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

bool level_in_scope(std::int64_t N) {
  int a = 0;
  while (N > 0 && N % 2 == 0) {
    N /= 2;
    ++a;
  }
  return a <= 2;
}

namespace {

// 4 pi p^e / N
Ball target_ball(std::int64_t p, unsigned e, std::int64_t N, mpfr_prec_t prec) {
  return pi(prec) * 4 * pow(Ball::from_int(p, prec), e) / static_cast<long>(N);
}

}  // namespace

std::vector<WeightSequenceEntry> weight_sequence(std::int64_t p, std::int64_t N, int n_max, Theorem mode) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, "p must be prime");
  if (N < 1) throw Error(ErrorCode::InvalidModulus, "level must be positive");
  if (gcd(p, N) != 1) throw Error(ErrorCode::NotCoprime, "gcd(p, N) must be 1");
  if (n_max < 0) throw Error(ErrorCode::InvalidArgument, "n_max must be nonnegative");
  std::vector<WeightSequenceEntry> out;
  const int first = mode == Theorem::One ? 1 : 0;
  const mpfr_prec_t prec = 192;
  for (int n = first; n <= n_max; ++n) {
    const unsigned e = mode == Theorem::One ? static_cast<unsigned>(n) : static_cast<unsigned>(2 * n + 1);
    const Ball target = target_ball(p, e, N, prec);
    WeightSequenceEntry w;
    w.n = n;
    w.p = p;
    w.N = N;
    w.target = target.mid_double();
    if (!(w.target < 1e15)) {
      throw Error(ErrorCode::Overflow, "weight for n = " + std::to_string(n) + " exceeds 1e15; lower n_max");
    }
    // Nearest even integer to target + 1.
    w.k = 2 * std::lround((w.target + 1.0) / 2.0);
    if (w.k < 2) w.k = 2;
    const Ball a = Ball::from_int(w.k - 1, prec);
    w.window_ok = w.k >= 2 && abs(target - a).certainly_less(cbrt(a));
    w.small_k = w.k <= 27;
    out.push_back(w);
  }
  return out;
}

bool ExperimentReport::all_pass() const {
  for (const auto& r : rows) {
    if (r.pass.has_value() && !*r.pass) return false;
    if (r.gap_ok.has_value() && !*r.gap_ok) return false;
    if (r.head_ok.has_value() && !*r.head_ok) return false;
  }
  return true;
}

bool recompute_pass(const ExperimentRow& row, double proxy_constant) {
  return row.proxy.has_value() && row.bound.has_value() && *row.proxy >= proxy_constant * *row.bound;
}

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ExperimentMetadata make_metadata(const std::string& name, std::int64_t p, std::int64_t N, int n_max,
                                 const ExperimentOptions& o, double proxy_constant) {
  ExperimentMetadata m;
  m.experiment = name;
  m.p = p;
  m.N = N;
  m.n_max = n_max;
  m.precision_bits = o.precision_bits;
  m.max_k = o.max_k;
  m.truncation_policy = "B = 2 * min{B >= 2 : x_B <= 5/18}; integral-test tail";
  m.version = version_string();
  m.timestamp = utc_timestamp();
  m.proxy_constant = proxy_constant;
  m.gap_constant = o.constants.gap_floor;
  m.head_constant = o.constants.head_constant;
  m.proxy_normalization = o.constants.proxy_normalization;
  return m;
}

// Shared skip rules; returns false (with reason set) if the row is not asserted.
bool admissible(const WeightSequenceEntry& w, const ExperimentOptions& o, ExperimentRow& row) {
  if (w.small_k) {
    row.reason = "k <= 27";
    return false;
  }
  if (w.k > o.max_k) {
    row.reason = "k exceeds max-k " + std::to_string(o.max_k);
    return false;
  }
  if (!w.window_ok) {
    row.reason = "outside window";
    return false;
  }
  return true;
}

double scaled_lower(const Ball& v, long k, mpfr_prec_t prec) {
  return (v.mag_lower() * cbrt(Ball::from_int(k - 1, prec))).lower_double();
}

}  // namespace

ExperimentReport theorem1_experiment(std::int64_t p, std::int64_t N, int n_max, const ExperimentOptions& o) {
  const auto seq = weight_sequence(p, N, n_max, Theorem::One);
  ExperimentReport report;
  report.meta = make_metadata("thm1", p, N, n_max, o, o.constants.theorem1_constant);
  report.rows.resize(seq.size());
  parallel_for(seq.size(), [&](std::size_t i) {
    const WeightSequenceEntry& w = seq[i];
    ExperimentRow& row = report.rows[i];
    row.n = w.n;
    row.k = w.k;
    row.window_ok = w.window_ok;
    if (!admissible(w, o, row)) return;
    const Certificate cert = nonvanishing_certificate(p, w.n, N);
    row.certificate = cert.describe();
    if (cert.is_zero()) {
      row.reason = "S(1, p^2n, N) = 0";
      return;
    }
    const mpfr_prec_t prec = o.precision_bits;
    const std::int64_t pn = ipow(p, static_cast<unsigned>(2 * w.n));
    const PeterssonValue v = delta_truncated(w.k, N, 1, pn, default_truncation(w.k, N, 1, pn), prec);
    row.delta_mid = v.value.mid_double();
    row.delta_rad = v.value.rad_double();
    row.tail_bound = v.tail_bound;
    const double nn = static_cast<double>(w.n) * w.n;
    row.proxy = (v.value.mag_lower() / Ball::from_double(o.constants.proxy_normalization * nn, prec)).lower_double();
    const double km1 = static_cast<double>(w.k - 1);
    const double logk = std::log(static_cast<double>(w.k));
    row.bound = 1.0 / (std::cbrt(km1) * logk * logk);
    row.pass = recompute_pass(row, o.constants.theorem1_constant);
    row.gap = scaled_lower(v.value, w.k, prec);
    row.gap_ok = *row.gap >= o.constants.gap_floor;
  });
  return report;
}

ExperimentReport theorem2_experiment(std::int64_t p, std::int64_t N, int n_max, const ExperimentOptions& o) {
  const auto seq = weight_sequence(p, N, n_max, Theorem::Two);
  ExperimentReport report;
  report.meta = make_metadata("thm2", p, N, n_max, o, o.constants.theorem2_constant);
  report.rows.resize(seq.size());
  parallel_for(seq.size(), [&](std::size_t i) {
    const WeightSequenceEntry& w = seq[i];
    ExperimentRow& row = report.rows[i];
    row.n = w.n;
    row.k = w.k;
    row.window_ok = w.window_ok;
    if (!admissible(w, o, row)) return;
    const Certificate cert = nonvanishing_certificate(p, 2 * w.n + 1, N);
    row.certificate = cert.describe();
    if (cert.is_zero()) {
      row.reason = "S(1, p^(4n+2), N) = 0";
      return;
    }
    const mpfr_prec_t prec = o.precision_bits;
    Ball head = Ball::from_int(0, prec);
    double tails = 0.0;
    for (int j = 0; j < w.n; ++j) {
      const std::int64_t nj = ipow(p, static_cast<unsigned>(4 * j + 2));
      const PeterssonValue v = delta_truncated(w.k, N, 1, nj, default_truncation(w.k, N, 1, nj), prec);
      head += v.value;
      tails += v.tail_bound;
    }
    const std::int64_t nl = ipow(p, static_cast<unsigned>(4 * w.n + 2));
    const PeterssonValue last = delta_truncated(w.k, N, 1, nl, default_truncation(w.k, N, 1, nl), prec);
    const Ball total = head + last.value;
    row.delta_mid = total.mid_double();
    row.delta_rad = total.rad_double();
    row.tail_bound = tails + last.tail_bound;
    const double km1 = static_cast<double>(w.k - 1);
    const double logk = std::log(static_cast<double>(w.k));
    const double deg = 2.0 * w.n + 1.0;
    row.proxy = (total.mag_lower() / Ball::from_double(o.constants.proxy_normalization * deg * deg * deg, prec))
                    .lower_double();
    row.bound = 1.0 / (logk * logk * logk * std::cbrt(static_cast<double>(w.k)));
    row.bound_alt = 1.0 / std::cbrt(km1);
    row.pass = recompute_pass(row, o.constants.theorem2_constant);
    row.gap = scaled_lower(last.value, w.k, prec);
    row.gap_ok = *row.gap >= o.constants.gap_floor;
    row.head = head.mag_upper_double();
    // (5e/18)^{k-1} log k / (k-1)^{1/3}, evaluated in Ball arithmetic since it underflows doubles.
    const Ball ratio = exp(Ball::from_int(1, prec)) * 5 / 18;
    const Ball head_bound = pow(ratio, static_cast<unsigned long>(w.k - 1)) * log(Ball::from_int(w.k, prec)) /
                            cbrt(Ball::from_int(w.k - 1, prec)) * Ball::from_double(o.constants.head_constant, prec);
    row.head_bound = head_bound.lower_double();
    row.head_ok = head.mag_upper().certainly_less_equal(head_bound.lower());
  });
  return report;
}

}  // namespace sttrace
