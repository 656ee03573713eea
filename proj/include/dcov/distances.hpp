#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dcov/types.hpp"

namespace dcov {

/// Symmetric n x n Euclidean distance matrix with zero diagonal, plus its row
/// sums and grand sum. Immutable once built.
class DistanceMatrix {
 public:
  std::size_t n() const noexcept { return n_; }
  /// Column count of the block the distances were computed from.
  std::size_t dimension() const noexcept { return dimension_; }

  double operator()(std::size_t i, std::size_t j) const noexcept { return entries_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {entries_.data() + i * n_, n_};
  }
  std::span<const double> row_sums() const noexcept { return row_sums_; }
  double grand_sum() const noexcept { return grand_sum_; }

  /// Entry (i, j) of the result is entry (perm[i], perm[j]) of this matrix.
  DistanceMatrix permuted(std::span<const std::size_t> perm) const;

 private:
  friend DistanceMatrix pairwise_distances(const Matrix& block);
  DistanceMatrix(std::size_t n, std::size_t dimension, std::vector<double> entries);

  std::size_t n_ = 0;
  std::size_t dimension_ = 0;
  std::vector<double> entries_;
  std::vector<double> row_sums_;
  double grand_sum_ = 0.0;
};

/// Full pairwise distance matrix of the rows of `block`. Throws DataError
/// naming the first row holding a NaN or infinity.
DistanceMatrix pairwise_distances(const Matrix& block);

double euclidean_distance(std::span<const double> a, std::span<const double> b) noexcept;

/// Number of pairwise_distances calls so far in this process. Lets tests
/// check that resampling loops reuse matrices instead of rebuilding them.
std::size_t distance_matrix_builds() noexcept;

}  // namespace dcov
