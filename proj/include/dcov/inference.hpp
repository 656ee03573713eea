#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

#include "dcov/types.hpp"

namespace dcov {

enum class StatisticKind { dcov_fast, dcov_naive, classical_cov };
enum class TestMethod { permutation, asymptotic };

StatisticKind parse_statistic(const std::string& tag);
std::string to_string(StatisticKind kind);
std::string to_string(TestMethod method);

struct TestReport {
  StatisticKind statistic = StatisticKind::dcov_fast;
  TestMethod method = TestMethod::permutation;
  double observed = 0.0;
  std::size_t replicates = 0;
  /// (1 + #{replicate >= observed}) / (replicates + 1).
  double p_value = 1.0;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t p = 0;
  std::size_t q = 0;
  std::int64_t runtime_ms = 0;
};

/// (1 + #{v in reference : v >= observed}) / (size + 1). Ties count against
/// the observed value.
double upper_tail_p_value(double observed, std::span<const double> reference);

/// Permutation test of independence. Replicate b applies a uniformly random
/// permutation (drawn from stream (seed, b)) to the Y rows; for the distance
/// statistics both distance matrices are built once and only indexed through
/// the permutation.
TestReport permutation_test(const PairedSample& sample, StatisticKind statistic, std::size_t B,
                            std::uint64_t seed, unsigned threads = 1);

/// Asymptotic test: observed n * Omega against the mixture 6 sum lambda_i (Z_i^2 - 1),
/// with the spectrum estimated from the sample after one random relabeling of Y.
TestReport asymptotic_test(const PairedSample& sample, std::size_t basis_size,
                           std::size_t mixture_reps, std::uint64_t seed, unsigned threads = 1);

}  // namespace dcov
