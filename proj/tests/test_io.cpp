#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "dcov/datagen.hpp"
#include "dcov/errors.hpp"
#include "dcov/io.hpp"

namespace dcov {
namespace {

CsvData parse(const std::string& text, ColumnSpec cols, CsvOptions opt = {}) {
  std::istringstream in(text);
  return parse_csv(in, cols, opt);
}

std::string error_of(const std::string& text, ColumnSpec cols, CsvOptions opt = {}) {
  try {
    parse(text, cols, opt);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

TEST(Csv, ThreeRowsByIndex) {
  const auto d = parse("0,1\n2,3\n4,5\n", {{"0"}, {"1"}});
  ASSERT_EQ(d.sample.n(), 3u);
  EXPECT_EQ(d.sample.p(), 1u);
  EXPECT_EQ(d.sample.q(), 1u);
  EXPECT_EQ(d.sample.x()(2, 0), 4.0);
  EXPECT_EQ(d.sample.y()(1, 0), 3.0);
  EXPECT_EQ(d.dropped_rows, 0u);
}

TEST(Csv, HeaderNamesResolve) {
  const auto d = parse("a,b,c\n0,1,9\n2,3,9\n4,5,9\n", {{"a"}, {"b", "2"}}, {true, true});
  EXPECT_EQ(d.sample.n(), 3u);
  EXPECT_EQ(d.sample.q(), 2u);
  EXPECT_EQ(d.sample.y()(0, 1), 9.0);
  EXPECT_EQ(d.x_names, std::vector<std::string>{"a"});
  EXPECT_EQ(d.y_names, (std::vector<std::string>{"b", "c"}));
}

TEST(Csv, StrictModeNamesRowAndColumn) {
  const std::string msg = error_of("0,1\n2,oops\n4,5\n", {{"0"}, {"1"}});
  EXPECT_NE(msg.find("row 2"), std::string::npos) << msg;
  EXPECT_NE(msg.find("column 1"), std::string::npos) << msg;
  EXPECT_THROW(parse("0,1\n2,\n", {{"0"}, {"1"}}), DataError);
}

TEST(Csv, LenientModeDropsRows) {
  const auto d = parse("0,1\n2,oops\n4,5\nnan,1\n", {{"0"}, {"1"}}, {false, false});
  EXPECT_EQ(d.sample.n(), 2u);
  EXPECT_EQ(d.dropped_rows, 2u);
  EXPECT_THROW(parse("x,1\n", {{"0"}, {"1"}}, {false, false}), DataError);
}

TEST(Csv, UnselectedGarbageIsIgnored) {
  const auto d = parse("0,1,zzz\n2,3,yyy\n", {{"0"}, {"1"}});
  EXPECT_EQ(d.sample.n(), 2u);
}

TEST(Csv, ArityMismatchNamesRow) {
  const std::string msg = error_of("0,1\n2,3\n4\n", {{"0"}, {"1"}});
  EXPECT_NE(msg.find("row 3"), std::string::npos) << msg;
}

TEST(Csv, ColumnSelectionErrors) {
  EXPECT_THROW(parse("a,b\n1,2\n", {{"a"}, {"zz"}}, {true, true}), DataError);
  EXPECT_THROW(parse("1,2\n", {{"0"}, {"5"}}), DataError);
  EXPECT_THROW(parse("1,2\n", {{"0"}, {"0"}}), DomainError);
  EXPECT_THROW(parse("1,2\n", {{}, {"1"}}), DomainError);
  EXPECT_THROW(parse("", {{"0"}, {"1"}}), DataError);
  EXPECT_THROW(read_csv("/nonexistent/file.csv", {{"0"}, {"1"}}), DataError);
}

TEST(Csv, RoundTripKeepsValues) {
  ShapeSpec spec{Shape::independent, 100, 0.0, 3};
  spec.p = 2;
  spec.q = 3;
  const auto s = generate(spec);
  const auto path = std::filesystem::temp_directory_path() / "dcov_io_roundtrip.csv";
  write_csv(path, s);
  const auto d = read_csv(path, {{"x0", "x1"}, {"y0", "y1", "y2"}}, {true, true});
  std::filesystem::remove(path);
  ASSERT_EQ(d.sample.n(), 100u);
  for (std::size_t i = 0; i < 100; ++i) {
    for (std::size_t c = 0; c < 2; ++c)
      EXPECT_NEAR(d.sample.x()(i, c), s.x()(i, c), 1e-15 * std::fabs(s.x()(i, c)));
    for (std::size_t c = 0; c < 3; ++c)
      EXPECT_NEAR(d.sample.y()(i, c), s.y()(i, c), 1e-15 * std::fabs(s.y()(i, c)));
  }
}

TEST(Json, TestReportFieldOrder) {
  TestReport r;
  r.observed = 0.5;
  r.replicates = 99;
  r.p_value = 0.01;
  r.seed = 42;
  r.n = 10;
  r.p = 1;
  r.q = 2;
  const auto j = to_json(r, "2026-01-01T00:00:00Z");
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  const std::vector<std::string> expected = {"method", "statistic", "observed", "replicates", "p_value",
                                             "seed", "n", "p", "q", "runtime_ms", "timestamp"};
  EXPECT_EQ(keys, expected);
  EXPECT_EQ(j["method"], "permutation");
  EXPECT_EQ(j["statistic"], "dcov-fast");
}

TEST(Json, EstimateAndIntegral) {
  DCovEstimate e{0.25, EstimatorKind::cf_mc, 10, 1, 1, 0.01};
  const auto j = to_json(e);
  EXPECT_EQ(j["kind"], "cf-mc");
  EXPECT_EQ(j["standard_error"], 0.01);
  DCovEstimate f{0.25, EstimatorKind::fast_u, 10, 1, 1, 0.0};
  EXPECT_FALSE(to_json(f).contains("standard_error"));
  IntegralCheck c;
  c.dimension = 1;
  c.argument = {2.0};
  EXPECT_TRUE(to_json(c).contains("closed_form"));
}

TEST(Json, TimestampFormat) {
  EXPECT_TRUE(std::regex_match(iso8601_now(), std::regex(R"(\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}Z)")));
}

}  // namespace
}  // namespace dcov
