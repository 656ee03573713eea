#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numeric>

#include "dcov/distances.hpp"
#include "dcov/errors.hpp"
#include "dcov/random.hpp"
#include "oracles.hpp"

namespace dcov {
namespace {

TEST(Distances, MatchesDirectNorms) {
  const Matrix m = testing::normal_block(25, 3, 4);
  const auto d = pairwise_distances(m);
  ASSERT_EQ(d.n(), 25u);
  EXPECT_EQ(d.dimension(), 3u);
  double grand = 0.0;
  for (std::size_t i = 0; i < 25; ++i) {
    double row = 0.0;
    EXPECT_EQ(d(i, i), 0.0);
    for (std::size_t j = 0; j < 25; ++j) {
      EXPECT_NEAR(d(i, j), testing::norm_diff(m.row(i), m.row(j)), 1e-14);
      EXPECT_EQ(d(i, j), d(j, i));
      row += d(i, j);
    }
    EXPECT_NEAR(d.row_sums()[i], row, 1e-12);
    grand += row;
  }
  EXPECT_NEAR(d.grand_sum(), grand, 1e-10);
}

TEST(Distances, TriangleInequality) {
  const auto d = pairwise_distances(testing::normal_block(15, 2, 9));
  for (std::size_t i = 0; i < 15; ++i)
    for (std::size_t j = 0; j < 15; ++j)
      for (std::size_t k = 0; k < 15; ++k) EXPECT_LE(d(i, k), d(i, j) + d(j, k) + 1e-12);
}

TEST(Distances, PermutedReindexes) {
  const Matrix m = testing::normal_block(12, 2, 1);
  const auto d = pairwise_distances(m);
  auto gen = make_engine(3, 0);
  const auto perm = random_permutation(12, gen);
  const auto dp = d.permuted(perm);
  const auto direct = pairwise_distances(m.select_rows(perm));
  for (std::size_t i = 0; i < 12; ++i) {
    for (std::size_t j = 0; j < 12; ++j) EXPECT_EQ(dp(i, j), d(perm[i], perm[j]));
    EXPECT_NEAR(dp.row_sums()[i], direct.row_sums()[i], 1e-12);
  }
  EXPECT_NEAR(dp.grand_sum(), d.grand_sum(), 1e-10);
}

TEST(Distances, EuclideanDistanceBasic) {
  const std::vector<double> a = {0.0, 0.0}, b = {3.0, 4.0};
  EXPECT_EQ(euclidean_distance(a, b), 5.0);
  EXPECT_EQ(euclidean_distance(b, b), 0.0);
}

TEST(Distances, BuildCounterIncrements) {
  const std::size_t before = distance_matrix_builds();
  pairwise_distances(testing::normal_block(5, 1, 2));
  pairwise_distances(testing::normal_block(5, 1, 3));
  EXPECT_EQ(distance_matrix_builds(), before + 2);
}

TEST(Distances, NonFiniteEntryNamesRow) {
  Matrix m(4, 2, 1.0);
  m(2, 1) = std::numeric_limits<double>::quiet_NaN();
  try {
    pairwise_distances(m);
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("row 2"), std::string::npos) << e.what();
  }
  m(2, 1) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(pairwise_distances(m), DataError);
}

TEST(PairedSampleTest, ValidatesShapes) {
  EXPECT_THROW(PairedSample(Matrix(3, 1), Matrix(4, 1)), DataError);
  EXPECT_THROW(PairedSample(Matrix(0, 1), Matrix(0, 1)), DataError);
  EXPECT_THROW(PairedSample(Matrix(3, 0), Matrix(3, 1)), DataError);
  Matrix bad(3, 1);
  bad(1, 0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(PairedSample(bad, Matrix(3, 1)), DataError);
}

TEST(PairedSampleTest, SubsetAndPermute) {
  const auto s = testing::normal_sample(6, 2, 1, 8);
  const std::vector<std::size_t> idx = {5, 0, 3};
  const auto sub = s.subset(idx);
  ASSERT_EQ(sub.n(), 3u);
  EXPECT_EQ(sub.x()(0, 1), s.x()(5, 1));
  EXPECT_EQ(sub.y()(2, 0), s.y()(3, 0));
  const std::vector<std::size_t> perm = {1, 0, 2, 3, 4, 5};
  const auto sp = s.with_permuted_y(perm);
  EXPECT_EQ(sp.x(), s.x());
  EXPECT_EQ(sp.y()(0, 0), s.y()(1, 0));
  EXPECT_EQ(s.head(4).n(), 4u);
  EXPECT_EQ(s.swapped().p(), 1u);
}

TEST(Random, StreamsAreReproducibleAndDistinct) {
  auto a = make_engine(42, 7), b = make_engine(42, 7), c = make_engine(42, 8);
  const auto va = a(), vb = b(), vc = c();
  EXPECT_EQ(va, vb);
  EXPECT_NE(va, vc);
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
}

TEST(Random, PermutationIsBijection) {
  auto gen = make_engine(5, 0);
  auto perm = random_permutation(50, gen);
  std::sort(perm.begin(), perm.end());
  for (std::size_t i = 0; i < 50; ++i) EXPECT_EQ(perm[i], i);
  const auto pick = sample_without_replacement(50, 20, gen);
  std::vector<std::size_t> sorted(pick.begin(), pick.end());
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(std::adjacent_find(sorted.begin(), sorted.end()), sorted.end());
  EXPECT_LT(sorted.back(), 50u);
}

TEST(Random, UniformOpenStaysInside) {
  auto gen = make_engine(1, 1);
  for (int i = 0; i < 100000; ++i) {
    const double u = uniform_open(gen);
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

}  // namespace
}  // namespace dcov
