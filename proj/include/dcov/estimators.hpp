#pragma once

#include <array>
#include <cstddef>

#include "dcov/distances.hpp"
#include "dcov/types.hpp"

namespace dcov {

/// 4x4 table of distances among four observations, one table per block.
using QuadDistances = std::array<std::array<double, 4>, 4>;

/// The symmetric 24-term kernel h of four joint observations:
/// (1/24) sum over ordered distinct (i,j,k,l) of
///   a_ij b_ij - 2 a_ij b_ik + a_ij b_kl,
/// where a and b are X- and Y-distances.
double kernel_h(const std::array<Observation, 4>& z);

/// Same kernel evaluated from precomputed distance tables, using the
/// collapsed form (1/12) [4 S1 + 2 S2 - sum_i A_i B_i] with S1 the
/// same-pair products, S2 the complementary-pair products and A_i, B_i the
/// within-quadruple row sums.
double kernel_h(const QuadDistances& a, const QuadDistances& b) noexcept;

/// Sums that determine the O(n^2) estimator:
///   cross       = sum_{i,j} a_ij b_ij
///   x_total     = sum_{i,j} a_ij,   y_total likewise
///   row_product = sum_i (sum_j a_ij)(sum_k b_ik)
struct FastSums {
  std::size_t n = 0;
  double cross = 0.0;
  double x_total = 0.0;
  double y_total = 0.0;
  double row_product = 0.0;
};

/// (1/(n(n-3))) [cross + x_total y_total / ((n-1)(n-2)) - 2 row_product / (n-2)].
double fast_value(const FastSums& s) noexcept;

/// Sum of h over all 4-subsets, i.e. binom(n,4) times fast_value; zero for n < 4.
double subset_total(const FastSums& s) noexcept;

FastSums fast_sums(const DistanceMatrix& dx, const DistanceMatrix& dy);

/// Unbiased U-statistic: average of h over all 4-subsets. O(n^4).
DCovEstimate dcov_usq_naive(const PairedSample& sample);
DCovEstimate dcov_usq_naive(const DistanceMatrix& dx, const DistanceMatrix& dy);

/// The same U-statistic in O(n^2) from distance matrices.
DCovEstimate dcov_usq_fast(const DistanceMatrix& dx, const DistanceMatrix& dy);
DCovEstimate dcov_usq_fast(const PairedSample& sample);

/// O(n^2) time, O(n) memory variant of dcov_usq_fast for samples too large
/// to hold two n x n matrices. Distances are recomputed on the fly.
DCovEstimate dcov_usq_streaming(const PairedSample& sample, unsigned threads = 1);

/// Distance variance V^2(X, X) in its unbiased form; may be slightly negative.
double dvar_usq(const DistanceMatrix& dx);

/// Squared distance correlation from the unbiased estimates, clamped to
/// [-1, 1]. Returns 0 when either distance variance is <= 0.
double dcor_sq(const PairedSample& sample);
double dcor_sq(const DistanceMatrix& dx, const DistanceMatrix& dy);

/// Squared Frobenius norm of the p x q sample cross-covariance matrix.
double classical_cov_stat(const PairedSample& sample);

}  // namespace dcov
