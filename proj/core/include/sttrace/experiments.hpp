#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sttrace/ball.hpp"
#include "sttrace/calibration.hpp"

namespace sttrace {

enum class Theorem { One, Two };

struct WeightSequenceEntry {
  int n = 0;
  std::int64_t p = 0;
  std::int64_t N = 0;
  long k = 0;
  bool window_ok = false;
  /// 4 pi p^n / N (Theorem::One) or 4 pi p^{2n+1} / N (Theorem::Two).
  double target = 0.0;
  /// k <= 27: reported but never asserted.
  bool small_k = false;
};

/// Rows n = 1..n_max (Theorem::One) or n = 0..n_max (Theorem::Two); k_n is the
/// even integer minimizing |target - (k_n - 1)|.
std::vector<WeightSequenceEntry> weight_sequence(std::int64_t p, std::int64_t N, int n_max, Theorem mode);

/// True for N = 2^a b with a <= 2 and b odd.
bool level_in_scope(std::int64_t N);

struct ExperimentRow {
  int n = 0;
  long k = 0;
  bool window_ok = false;
  std::optional<double> delta_mid;
  std::optional<double> delta_rad;
  std::optional<double> tail_bound;
  std::optional<double> proxy;
  std::optional<double> bound;
  /// Empty when the row is not asserted; `reason` says why.
  std::optional<bool> pass;
  std::string reason;

  std::string certificate;
  /// Lower bound of |Delta| (k-1)^{1/3}.
  std::optional<double> gap;
  std::optional<bool> gap_ok;
  /// Alternative normalization (k-1)^{-1/3} for the odd-power rows.
  std::optional<double> bound_alt;
  /// Odd-power rows: |sum_{i<n} Delta(1, p^{4i+2})| and its envelope.
  std::optional<double> head;
  std::optional<double> head_bound;
  std::optional<bool> head_ok;

  bool operator==(const ExperimentRow&) const = default;
};

struct ExperimentMetadata {
  std::string experiment;
  std::int64_t p = 0;
  std::int64_t N = 0;
  int n_max = 0;
  long precision_bits = 0;
  long max_k = 0;
  std::string truncation_policy;
  std::string version;
  std::string timestamp;
  double proxy_constant = 0.0;
  double gap_constant = 0.0;
  double head_constant = 0.0;
  double proxy_normalization = 0.0;

  bool operator==(const ExperimentMetadata&) const = default;
};

struct ExperimentReport {
  ExperimentMetadata meta;
  std::vector<ExperimentRow> rows;

  /// Every asserted check of every row holds.
  bool all_pass() const;
  bool operator==(const ExperimentReport&) const = default;
};

/// pass = proxy >= proxy_constant * bound, recomputable from the row alone.
bool recompute_pass(const ExperimentRow& row, double proxy_constant);

struct ExperimentOptions {
  mpfr_prec_t precision_bits = 192;
  long max_k = 2500;
  Calibration constants = default_calibration();
};

/// Rows along k_n = [4 pi p^n / N] with Delta_{k_n,N}(1, p^{2n}).
ExperimentReport theorem1_experiment(std::int64_t p, std::int64_t N, int n_max, const ExperimentOptions& options);

/// Rows along k_n = [4 pi p^{2n+1} / N] with T_n = sum_{i<=n} Delta_{k_n,N}(1, p^{4i+2}).
ExperimentReport theorem2_experiment(std::int64_t p, std::int64_t N, int n_max, const ExperimentOptions& options);

/// Number of workers from STTRACE_WORKERS, else the hardware concurrency.
unsigned worker_count();

/// Runs fn(0..count-1) on worker_count() threads. Exceptions are rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace sttrace
