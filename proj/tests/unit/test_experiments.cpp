#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "sttrace/error.hpp"
#include "sttrace/experiments.hpp"
#include "sttrace/report_io.hpp"

using namespace sttrace;

namespace {

std::string golden(const std::string& name) {
  std::ifstream in(std::string(STTRACE_GOLDEN_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Experiments, WeightSequenceExamples) {
  const auto seq = weight_sequence(3, 5, 6, Theorem::One);
  ASSERT_EQ(seq.size(), 6U);
  EXPECT_EQ(seq[0].k, 8);
  EXPECT_TRUE(seq[0].small_k);
  EXPECT_EQ(seq[3].n, 4);
  EXPECT_EQ(seq[3].k, 204);
  EXPECT_TRUE(seq[3].window_ok);
  EXPECT_FALSE(seq[3].small_k);
  const auto two = weight_sequence(3, 5, 2, Theorem::Two);
  EXPECT_EQ(two.front().n, 0);
  EXPECT_EQ(two[1].k, 68);
  EXPECT_EQ(two[2].k, 612);
}

TEST(Experiments, WeightsAreEvenAndGrow) {
  for (std::int64_t p : {3, 5, 7, 11}) {
    for (std::int64_t N : {1, 3, 4, 8, 12}) {
      if (N % p == 0) continue;
      for (const auto& w : weight_sequence(p, N, 6, Theorem::One)) {
        EXPECT_EQ(w.k % 2, 0);
        EXPECT_LE(std::fabs(w.target - (w.k - 1)), 1.0 + 1e-9);
        if (w.n >= 3) {
          EXPECT_GE(double(w.k), std::pow(double(p), 0.9 * w.n)) << p << " " << N << " " << w.n;
        }
      }
    }
  }
}

TEST(Experiments, Errors) {
  try {
    weight_sequence(3, 6, 3, Theorem::One);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotCoprime);
  }
  try {
    weight_sequence(101, 1, 10, Theorem::One);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Overflow);
  }
  EXPECT_THROW(weight_sequence(4, 5, 3, Theorem::One), Error);
  EXPECT_THROW(theorem1_experiment(3, 6, 3, ExperimentOptions{}), Error);
}

TEST(Experiments, LevelScope) {
  EXPECT_TRUE(level_in_scope(1));
  EXPECT_TRUE(level_in_scope(12));
  EXPECT_FALSE(level_in_scope(8));
  EXPECT_FALSE(level_in_scope(40));
}

TEST(Experiments, FirstRunPassesAndAuditsItself) {
  const ExperimentOptions o;
  for (auto [p, N] : {std::pair<std::int64_t, std::int64_t>{3, 5}, {5, 6}, {7, 4}}) {
    const ExperimentReport r = theorem1_experiment(p, N, 4, o);
    EXPECT_TRUE(r.all_pass()) << p << " " << N;
    for (const auto& row : r.rows) {
      if (!row.pass) {
        EXPECT_FALSE(row.reason.empty());
        continue;
      }
      EXPECT_EQ(*row.pass, recompute_pass(row, r.meta.proxy_constant));
      EXPECT_LE(*row.tail_bound, *row.delta_rad);
    }
  }
}

TEST(Experiments, KnownValue) {
  const ExperimentReport r = theorem1_experiment(3, 5, 3, ExperimentOptions{});
  ASSERT_EQ(r.rows.size(), 3U);
  EXPECT_NEAR(*r.rows[2].delta_mid, 0.43004252144102987, 1e-15);
  EXPECT_EQ(r.rows[0].reason, "k <= 27");
}

TEST(Experiments, MaxKSkips) {
  ExperimentOptions o;
  o.max_k = 300;
  const ExperimentReport r = theorem1_experiment(3, 5, 5, o);
  EXPECT_FALSE(r.rows[4].pass.has_value());
  EXPECT_EQ(r.rows[4].reason, "k exceeds max-k 300");
}

TEST(Experiments, SecondRunHead) {
  const ExperimentReport r = theorem2_experiment(3, 5, 2, ExperimentOptions{});
  EXPECT_TRUE(r.all_pass());
  EXPECT_FALSE(r.rows[0].head.has_value());
  ASSERT_TRUE(r.rows[1].head_ok.has_value());
  EXPECT_TRUE(*r.rows[1].head_ok);
  EXPECT_LT(*r.rows[1].head, 1e-40);
  ASSERT_TRUE(r.rows[1].bound_alt.has_value());
  EXPECT_NEAR(*r.rows[1].bound_alt, 1.0 / std::cbrt(67.0), 1e-15);
}

TEST(Experiments, DeterministicAcrossWorkers) {
  setenv("STTRACE_WORKERS", "1", 1);
  ExperimentReport a = theorem1_experiment(5, 3, 3, ExperimentOptions{});
  setenv("STTRACE_WORKERS", "3", 1);
  ExperimentReport b = theorem1_experiment(5, 3, 3, ExperimentOptions{});
  unsetenv("STTRACE_WORKERS");
  a.meta.timestamp = b.meta.timestamp;
  EXPECT_EQ(a, b);
}

TEST(Experiments, ParallelForRethrows) {
  setenv("STTRACE_WORKERS", "2", 1);
  EXPECT_THROW(parallel_for(5, [](std::size_t i) {
                 if (i == 3) throw Error(ErrorCode::Io, "x");
               }),
               Error);
  unsetenv("STTRACE_WORKERS");
}

TEST(Experiments, GoldenCsv) {
  EXPECT_EQ(report_to_csv(theorem1_experiment(3, 5, 6, ExperimentOptions{})), golden("thm1_p3_N5.csv"));
  EXPECT_EQ(report_to_csv(theorem2_experiment(3, 5, 2, ExperimentOptions{})), golden("thm2_p3_N5.csv"));
}

TEST(Experiments, CalibrationMatchesGolden) {
  const auto j = nlohmann::json::parse(golden("calibration.json"));
  const Calibration c = default_calibration();
  EXPECT_EQ(j.at("envelope_constant").get<double>(), c.envelope_constant);
  EXPECT_EQ(j.at("gap_floor").get<double>(), c.gap_floor);
  EXPECT_EQ(j.at("theorem1_constant").get<double>(), c.theorem1_constant);
  EXPECT_EQ(j.at("theorem2_constant").get<double>(), c.theorem2_constant);
  EXPECT_EQ(j.at("head_constant").get<double>(), c.head_constant);
  EXPECT_EQ(j.at("proxy_normalization").get<double>(), c.proxy_normalization);
  EXPECT_EQ(j.at("q_derivative_cap").get<double>(), c.q_derivative_cap);
  EXPECT_EQ(j.at("q_endpoint_cap").get<double>(), c.q_endpoint_cap);
  EXPECT_EQ(j.at("x_derivative_cap").get<double>(), c.x_derivative_cap);
}
