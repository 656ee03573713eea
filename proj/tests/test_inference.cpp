#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dcov/datagen.hpp"
#include "dcov/distances.hpp"
#include "dcov/errors.hpp"
#include "dcov/estimators.hpp"
#include "dcov/inference.hpp"
#include "oracles.hpp"

namespace dcov {
namespace {

TEST(PValue, CountsTiesAgainstObserved) {
  const std::vector<double> ref = {1.0, 2.0, 3.0, 3.0};
  EXPECT_DOUBLE_EQ(upper_tail_p_value(3.0, ref), 3.0 / 5.0);
  EXPECT_DOUBLE_EQ(upper_tail_p_value(10.0, ref), 1.0 / 5.0);
  EXPECT_DOUBLE_EQ(upper_tail_p_value(-1.0, ref), 1.0);
}

TEST(StatisticKindTags, RoundTrip) {
  for (auto k : {StatisticKind::dcov_fast, StatisticKind::dcov_naive, StatisticKind::classical_cov})
    EXPECT_EQ(parse_statistic(to_string(k)), k);
  EXPECT_EQ(to_string(StatisticKind::classical_cov), "classical-cov");
  EXPECT_THROW(parse_statistic("pearson"), DomainError);
  EXPECT_EQ(to_string(TestMethod::asymptotic), "asymptotic");
}

TEST(Permutation, ObservedStatisticMatchesEstimator) {
  const auto s = testing::normal_sample(20, 2, 1, 4);
  EXPECT_NEAR(permutation_test(s, StatisticKind::dcov_fast, 9, 1).observed,
              dcov_usq_fast(s).value, 1e-12);
  EXPECT_NEAR(permutation_test(s, StatisticKind::dcov_naive, 9, 1).observed,
              dcov_usq_naive(s).value, 1e-12);
  EXPECT_NEAR(permutation_test(s, StatisticKind::classical_cov, 9, 1).observed,
              classical_cov_stat(s), 1e-12);
}

// Exact permutation distribution by enumerating all 5! relabelings.
TEST(Permutation, ConvergesToExhaustiveEnumeration) {
  const auto s = testing::normal_sample(5, 1, 1, 31);
  const double obs = testing::brute_u_statistic(s);
  std::vector<std::size_t> perm(5);
  std::iota(perm.begin(), perm.end(), 0);
  int at_least = 0, total = 0;
  do {
    if (testing::brute_u_statistic(s.with_permuted_y(perm)) >= obs - 1e-12) ++at_least;
    ++total;
  } while (std::next_permutation(perm.begin(), perm.end()));
  const double exact = static_cast<double>(at_least) / total;
  const std::size_t B = 40'000;
  const auto report = permutation_test(s, StatisticKind::dcov_fast, B, 8, 4);
  EXPECT_NEAR(report.p_value, exact, 4.0 * std::sqrt(exact * (1.0 - exact) / B) + 1.0 / B);
}

TEST(Permutation, BuildsDistanceMatricesOnce) {
  const auto s = generate({Shape::circle, 600, 0.05, 1});
  const std::size_t before = distance_matrix_builds();
  const auto report = permutation_test(s, StatisticKind::dcov_fast, 10'000, 2, 0);
  EXPECT_EQ(distance_matrix_builds() - before, 2u);
  EXPECT_EQ(report.replicates, 10'000u);
  EXPECT_DOUBLE_EQ(report.p_value, 1.0 / 10'001.0);
}

TEST(Permutation, DeterministicAcrossThreads) {
  const auto s = testing::normal_sample(40, 1, 2, 6);
  for (auto k : {StatisticKind::dcov_fast, StatisticKind::classical_cov}) {
    const auto a = permutation_test(s, k, 999, 17, 1);
    const auto b = permutation_test(s, k, 999, 17, 8);
    EXPECT_EQ(a.p_value, b.p_value);
    EXPECT_EQ(a.observed, b.observed);
  }
  const auto c = permutation_test(s, StatisticKind::dcov_fast, 999, 18, 1);
  const auto d = permutation_test(s, StatisticKind::dcov_fast, 999, 17, 1);
  EXPECT_EQ(d.seed, 17u);
  EXPECT_EQ(c.seed, 18u);
}

TEST(Permutation, ReportFields) {
  const auto s = testing::normal_sample(12, 3, 2, 1);
  const auto r = permutation_test(s, StatisticKind::dcov_fast, 99, 5);
  EXPECT_EQ(r.method, TestMethod::permutation);
  EXPECT_EQ(r.n, 12u);
  EXPECT_EQ(r.p, 3u);
  EXPECT_EQ(r.q, 2u);
  EXPECT_GE(r.p_value, 1.0 / 100.0);
  EXPECT_LE(r.p_value, 1.0);
  EXPECT_GE(r.runtime_ms, 0);
}

TEST(Permutation, RejectsBadArguments) {
  const auto s = testing::normal_sample(3, 1, 1, 1);
  EXPECT_THROW(permutation_test(s, StatisticKind::dcov_fast, 10, 0), SampleSizeError);
  EXPECT_NO_THROW(permutation_test(s, StatisticKind::classical_cov, 10, 0));
  EXPECT_THROW(permutation_test(testing::normal_sample(10, 1, 1, 1), StatisticKind::dcov_fast, 0, 0),
               DomainError);
}

TEST(Permutation, HoldsLevelUnderIndependence) {
  int rejections = 0;
  const int runs = 400;
  for (int r = 0; r < runs; ++r) {
    const auto s = generate({Shape::independent, 40, 0.0, static_cast<std::uint64_t>(900 + r)});
    if (permutation_test(s, StatisticKind::dcov_fast, 199, r, 0).p_value <= 0.05) ++rejections;
  }
  const double rate = static_cast<double>(rejections) / runs;
  EXPECT_GT(rate, 0.02);
  EXPECT_LT(rate, 0.09);
}

TEST(Permutation, DetectsNonlinearDependence) {
  for (auto shape : {Shape::circle, Shape::wave, Shape::cross}) {
    const auto s = generate({shape, 200, 0.05, 3});
    EXPECT_LT(permutation_test(s, StatisticKind::dcov_fast, 999, 1, 0).p_value, 0.01)
        << to_string(shape);
  }
}

TEST(Asymptotic, HoldsLevelUnderIndependence) {
  int rejections = 0;
  const int runs = 300;
  for (int r = 0; r < runs; ++r) {
    const auto s = generate({Shape::independent, 100, 0.0, static_cast<std::uint64_t>(5000 + r)});
    if (asymptotic_test(s, 80, 5000, r, 0).p_value <= 0.05) ++rejections;
  }
  const double rate = static_cast<double>(rejections) / runs;
  EXPECT_GT(rate, 0.015);
  EXPECT_LT(rate, 0.09);
}

TEST(Asymptotic, HasPowerAgainstDependence) {
  const auto s = generate({Shape::circle, 400, 0.05, 9});
  const auto r = asymptotic_test(s, 200, 10'000, 3, 0);
  EXPECT_EQ(r.method, TestMethod::asymptotic);
  EXPECT_LT(r.p_value, 0.001);
  EXPECT_NEAR(r.observed, 400.0 * dcov_usq_fast(s).value, 1e-9);
}

TEST(Asymptotic, DeterministicAndValidated) {
  const auto s = testing::normal_sample(50, 2, 1, 3);
  const auto a = asymptotic_test(s, 30, 2000, 4, 1);
  const auto b = asymptotic_test(s, 30, 2000, 4, 6);
  EXPECT_EQ(a.p_value, b.p_value);
  EXPECT_THROW(asymptotic_test(testing::normal_sample(19, 1, 1, 1), 10, 100, 0), SampleSizeError);
  EXPECT_THROW(asymptotic_test(s, 60, 100, 0), SampleSizeError);
  EXPECT_THROW(asymptotic_test(s, 30, 0, 0), DomainError);
}

}  // namespace
}  // namespace dcov
