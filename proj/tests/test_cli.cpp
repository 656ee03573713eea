#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "dcov/cli.hpp"
#include "dcov/io.hpp"

namespace dcov {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "dcov");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

Json strip_volatile(Json j) {
  j.erase("runtime_ms");
  j.erase("timestamp");
  return j;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("dcov_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, UsageErrorsExitOne) {
  EXPECT_EQ(run_cli({}).code, 1);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 1);
  const auto r = run_cli({"estimate", "--bogus"});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(r.err.empty());
  EXPECT_EQ(run_cli({"gen", "--shape", "spiral"}).code, 1);
  EXPECT_EQ(run_cli({"verify-integral", "--p", "2", "--x", "1"}).code, 1);
  EXPECT_EQ(run_cli({"test", "--in", path("x.csv"), "--x", "0", "--y", "1", "--stat", "pearson"}).code, 1);
}

TEST_F(CliTest, DataErrorsExitTwo) {
  EXPECT_EQ(run_cli({"estimate", "--in", path("missing.csv"), "--x", "0", "--y", "1"}).code, 2);
  std::ofstream(path("bad.csv")) << "0,1\n2,x\n";
  const auto r = run_cli({"estimate", "--in", path("bad.csv"), "--x", "0", "--y", "1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("row 2"), std::string::npos) << r.err;
  std::ofstream(path("tiny.csv")) << "0,1\n2,3\n";
  EXPECT_EQ(run_cli({"estimate", "--in", path("tiny.csv"), "--x", "0", "--y", "1"}).code, 2);
}

TEST_F(CliTest, GenThenTestDetectsCircle) {
  ASSERT_EQ(run_cli({"gen", "--shape", "circle", "--n", "600", "--seed", "7", "--out", path("c.csv")}).code, 0);
  const auto r = run_cli({"test", "--in", path("c.csv"), "--x", "0", "--y", "1", "--header", "--stat",
                          "dcov-fast", "--B", "10000", "--seed", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_LE(j["p_value"].get<double>(), 1e-3);
  EXPECT_EQ(j["replicates"], 10000);
  EXPECT_EQ(j["seed"], 1);
}

TEST_F(CliTest, VerifyIntegralOneDimension) {
  const auto r = run_cli({"verify-integral", "--p", "1", "--x", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  const double closed = j["closed_form"], est = j["numeric_estimate"], bound = j["error_bound"];
  EXPECT_NEAR(closed, 2.0 * std::numbers::pi, 1e-15);
  EXPECT_LE(std::fabs(est - closed), bound + 1e-12);
}

TEST_F(CliTest, NaiveMatchesFastOnTruncatedFile) {
  ASSERT_EQ(run_cli({"gen", "--shape", "wave", "--n", "30", "--noise", "0.1", "--seed", "7", "--out", path("w.csv")}).code, 0);
  const auto fast = run_cli({"estimate", "--in", path("w.csv"), "--x", "0", "--y", "1", "--header"});
  const auto naive = run_cli({"estimate", "--in", path("w.csv"), "--x", "0", "--y", "1", "--header", "--naive"});
  ASSERT_EQ(fast.code, 0);
  ASSERT_EQ(naive.code, 0);
  const double a = Json::parse(fast.out)["value"], b = Json::parse(naive.out)["value"];
  EXPECT_NEAR(a, b, 1e-10 * std::fabs(b));
  EXPECT_EQ(Json::parse(naive.out)["kind"], "naive-U");
  EXPECT_EQ(Json::parse(fast.out)["seed"], 42);
}

TEST_F(CliTest, NaiveSizeCap) {
  ASSERT_EQ(run_cli({"gen", "--shape", "independent", "--n", "201", "--out", path("big.csv")}).code, 0);
  EXPECT_EQ(run_cli({"estimate", "--in", path("big.csv"), "--x", "0", "--y", "1", "--header", "--naive"}).code, 1);
}

TEST_F(CliTest, EstimateWithCorrelation) {
  ASSERT_EQ(run_cli({"gen", "--shape", "linear", "--rho", "0.9", "--n", "100", "--out", path("l.csv")}).code, 0);
  const auto r = run_cli({"estimate", "--in", path("l.csv"), "--x", "x0", "--y", "y0", "--header", "--dcor"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  ASSERT_TRUE(j.contains("dcor_sq"));
  EXPECT_GT(j["dcor_sq"].get<double>(), 0.3);
}

TEST_F(CliTest, OutputDeterministicAcrossRunsAndThreads) {
  ASSERT_EQ(run_cli({"gen", "--shape", "cross", "--n", "80", "--noise", "0.05", "--out", path("x.csv")}).code, 0);
  const std::vector<std::string> base = {"--in", path("x.csv"), "--x", "0", "--y", "1", "--header"};
  auto with = [&](std::string cmd, std::vector<std::string> extra) {
    std::vector<std::string> a = {cmd};
    a.insert(a.end(), base.begin(), base.end());
    a.insert(a.end(), extra.begin(), extra.end());
    const auto r = run_cli(a);
    EXPECT_EQ(r.code, 0) << r.err;
    return strip_volatile(Json::parse(r.out)).dump();
  };
  EXPECT_EQ(with("test", {"--B", "499", "--threads", "1"}), with("test", {"--B", "499", "--threads", "4"}));
  EXPECT_EQ(with("test", {"--B", "499"}), with("test", {"--B", "499"}));
  EXPECT_EQ(with("asymptest", {"--basis", "40", "--reps", "2000", "--threads", "1"}),
            with("asymptest", {"--basis", "40", "--reps", "2000", "--threads", "3"}));
}

TEST_F(CliTest, GenToStdoutAndFile) {
  const auto r = run_cli({"gen", "--shape", "circle", "--n", "5", "--seed", "3"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("x0,y0\n", 0), 0u) << r.out;
  ASSERT_EQ(run_cli({"gen", "--shape", "circle", "--n", "5", "--seed", "3", "--out", path("g.csv")}).code, 0);
  std::ifstream in(path("g.csv"));
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), r.out);
}

TEST_F(CliTest, SimulateLimitsSmallRun) {
  const auto r = run_cli({"simulate-limits", "--regime", "null", "--n", "50", "--reps", "100", "--draws",
                          "5000", "--basis", "40", "--spectrum-n", "80", "--threads", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_TRUE(j.contains("ks_distance"));
  EXPECT_TRUE(j.contains("quantiles"));
  EXPECT_EQ(j["seed"], 42);
}

TEST_F(CliTest, OutFlagWritesJson) {
  ASSERT_EQ(run_cli({"verify-integral", "--x", "1", "0", "--samples", "1000", "--out", path("v.json")}).code, 0);
  std::ifstream in(path("v.json"));
  const auto j = Json::parse(in);
  EXPECT_EQ(j["dimension"], 2);
  EXPECT_EQ(j["sample_count"], 1000);
}

}  // namespace
}  // namespace dcov
