#include "dcov/distances.hpp"

#include <atomic>
#include <cmath>
#include <string>

#include "dcov/errors.hpp"

namespace dcov {
namespace {

std::atomic<std::size_t> build_counter{0};

}  // namespace

double euclidean_distance(std::span<const double> a, std::span<const double> b) noexcept {
  if (a.size() == 1) return std::fabs(a[0] - b[0]);
  double sq = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    sq += d * d;
  }
  return std::sqrt(sq);
}

DistanceMatrix::DistanceMatrix(std::size_t n, std::size_t dimension, std::vector<double> entries)
    : n_(n), dimension_(dimension), entries_(std::move(entries)), row_sums_(n, 0.0) {
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0.0;
    for (double v : row(i)) s += v;
    row_sums_[i] = s;
    grand_sum_ += s;
  }
}

DistanceMatrix DistanceMatrix::permuted(std::span<const std::size_t> perm) const {
  std::vector<double> out(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i) {
    const double* src = entries_.data() + perm[i] * n_;
    double* dst = out.data() + i * n_;
    for (std::size_t j = 0; j < n_; ++j) dst[j] = src[perm[j]];
  }
  return DistanceMatrix(n_, dimension_, std::move(out));
}

DistanceMatrix pairwise_distances(const Matrix& block) {
  const std::size_t n = block.rows();
  if (n == 0 || block.cols() == 0) throw DataError("distance matrix of an empty block");
  for (std::size_t i = 0; i < n; ++i) {
    for (double v : block.row(i)) {
      if (!std::isfinite(v)) {
        throw DataError("non-finite entry in row " + std::to_string(i));
      }
    }
  }
  build_counter.fetch_add(1, std::memory_order_relaxed);

  std::vector<double> entries(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = euclidean_distance(block.row(i), block.row(j));
      entries[i * n + j] = d;
      entries[j * n + i] = d;
    }
  }
  return DistanceMatrix(n, block.cols(), std::move(entries));
}

std::size_t distance_matrix_builds() noexcept {
  return build_counter.load(std::memory_order_relaxed);
}

}  // namespace dcov
