#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

struct Result {
  int status;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(STTRACE_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, {}};
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int st = pclose(pipe);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string golden(const std::string& name) {
  std::ifstream in(std::string(STTRACE_GOLDEN_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST(Cli, Golden) {
  const Result a = run("thm1");
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(a.out, golden("thm1_p3_N5.csv"));
  const Result b = run("thm2 --p 3 --N 5 --n-max 2");
  EXPECT_EQ(b.status, 0);
  EXPECT_EQ(b.out, golden("thm2_p3_N5.csv"));
}

TEST(Cli, JsonReport) {
  const Result r = run("--format json thm1 --p 5 --N 6 --n-max 3");
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j.at("all_pass").get<bool>());
  EXPECT_EQ(j.at("metadata").at("p").get<int>(), 5);
  EXPECT_EQ(j.at("rows").size(), 3U);
}

TEST(Cli, Headers) {
  EXPECT_EQ(first_line(run("verify kloosterman --m 1 --n 1 --c-min 1 --c-max 4").out),
            "m,n,c,value_mid,value_rad,is_zero,certificate");
  EXPECT_EQ(first_line(run("verify measures --max-n 3").out), "check,measure,index,value_mid,value_rad,pass");
  EXPECT_EQ(first_line(run("measures --measure mu_inf2 --points 3").out), "measure,x,value_mid,value_rad");
}

TEST(Cli, Petersson) {
  const Result r = run("petersson --k 12 --N 1 --m 1 --n 1");
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  for (const char* key : {"value_mid", "value_rad", "tail_bound", "window_ok", "main_term_mid", "remainder_mid",
                          "remainder_rad", "envelope"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  // Truncated at B = 10 the value is an enclosure, not a near-exact number.
  EXPECT_NEAR(j.at("value_mid").get<double>(), 2.8402873751675005, j.at("value_rad").get<double>());
  const auto fine = nlohmann::json::parse(run("petersson --k 12 --N 1 --m 1 --n 1 --trunc 400").out);
  EXPECT_NEAR(fine.at("value_mid").get<double>(), 2.8402873751675005, 1e-15);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("bogus").status, 2);
  EXPECT_EQ(run("thm1 --N 6").status, 2);
  EXPECT_EQ(run("--format xml thm1").status, 2);
  EXPECT_EQ(run("thm1 --p 101 --N 1 --n-max 10").status, 2);
}

TEST(Cli, RuntimeFailure) { EXPECT_EQ(run("--out /nonexistent-dir/x.csv thm1 --n-max 2").status, 1); }

TEST(Cli, OutFile) {
  const std::string path = ::testing::TempDir() + "sttrace_cli.csv";
  ASSERT_EQ(run("--out " + path + " thm1").status, 0);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), golden("thm1_p3_N5.csv"));
  std::remove(path.c_str());
}
