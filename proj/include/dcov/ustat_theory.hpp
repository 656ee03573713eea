#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dcov/distances.hpp"
#include "dcov/estimators.hpp"
#include "dcov/types.hpp"

namespace dcov {

enum class H1Mode {
  /// Average of h over every unordered triple of sample points. O(n^3).
  exhaustive,
  /// Average over `triple_budget` random triples, with a standard error.
  budgeted,
  /// Exhaustive value obtained in O(n) from the subset-sum identity
  /// sum_{triples} h(z, .) = T(sample + z) - T(sample).
  algebraic,
};

struct H1Options {
  H1Mode mode = H1Mode::exhaustive;
  std::size_t triple_budget = 100'000;
  std::uint64_t seed = 0;
};

struct H1Estimate {
  double value = 0.0;
  /// Zero unless the mode is budgeted.
  double standard_error = 0.0;
  std::size_t triples = 0;
};

/// Empirical first projection: mean of h((x, y), Z_a, Z_b, Z_c) over triples
/// of sample points. Requires n >= 3.
H1Estimate h1_hat(Observation point, const PairedSample& sample, const H1Options& options = {});

/// Empirical second projection: mean of h(point1, point2, Z_a, Z_b) over all
/// unordered sample pairs, by direct enumeration. Requires n >= 2.
double h2_hat(Observation point1, Observation point2, const PairedSample& sample);

/// Reference sample with its distance matrices and estimator sums cached, so
/// the projections at outside points cost O(n) each instead of O(n^2) / O(n^3).
class ProjectionReference {
 public:
  explicit ProjectionReference(PairedSample sample);

  const PairedSample& sample() const noexcept { return sample_; }
  std::size_t n() const noexcept { return sample_.n(); }

  /// Equals h1_hat(point, sample) in exhaustive mode.
  double h1(Observation point) const;
  /// Equals h2_hat(point1, point2, sample).
  double h2(Observation point1, Observation point2) const;
  /// h1 at sample point i with the average taken over the other n - 1 points.
  double h1_leave_one_out(std::size_t i) const;

 private:
  PairedSample sample_;
  DistanceMatrix dx_;
  DistanceMatrix dy_;
  FastSums sums_;
  double total_;
};

/// Sample variance of leave-one-out h1 values at `eval_budget` sample points
/// (all of them when the budget exceeds n). Requires n >= 10.
double var_h1_hat(const PairedSample& sample, std::size_t eval_budget, std::uint64_t seed);

/// Sample variance of h2 over `eval_pairs` disjoint pairs of held-out points,
/// each evaluated against the remaining points.
double var_h2_hat(const PairedSample& sample, std::size_t eval_pairs, std::uint64_t seed);

/// Eigenvalues of the empirical h2 operator, sorted nonincreasing.
struct LimitSpectrum {
  std::vector<double> eigenvalues;
  std::size_t n_basis = 0;
};

/// Eigenvalues of M / basis_size with M[a][b] = h2_hat(z_a, z_b, sample) on
/// basis_size sample points drawn without replacement.
LimitSpectrum h2_spectrum(const PairedSample& sample, std::size_t basis_size, std::uint64_t seed,
                          unsigned threads = 1);

/// Variance of the truncated mixture, 72 sum lambda_i^2.
double mixture_variance(const LimitSpectrum& spectrum) noexcept;

/// Draws of 6 sum_i lambda_i (Z_i^2 - 1).
std::vector<double> sample_degenerate_limit(const LimitSpectrum& spectrum, std::size_t reps,
                                            std::uint64_t seed, unsigned threads = 1);

/// Draws of N(0, 16 variance_h1).
std::vector<double> sample_normal_limit(double variance_h1, std::size_t reps, std::uint64_t seed);

/// Empirical vs limiting distribution of a scaled estimator.
struct LimitComparison {
  std::vector<double> empirical;
  std::vector<double> limit;
  double ks_distance = 0.0;
};

/// n * Omega on independent scalar standard normals against the mixture law
/// whose spectrum comes from one independent sample of size spectrum_n.
struct NullLimitConfig {
  std::size_t n = 200;
  std::size_t replicates = 2000;
  std::size_t spectrum_n = 500;
  std::size_t basis = 200;
  std::size_t limit_draws = 100'000;
  std::uint64_t seed = 42;
  unsigned threads = 1;
};

struct NullLimitResult {
  LimitComparison comparison;
  LimitSpectrum spectrum;
};

NullLimitResult simulate_null_limit(const NullLimitConfig& config);

/// sqrt(n) (Omega - V2_ref) on Y = X + noise_sd * E against N(0, 16 Var h1),
/// with V2_ref from one streaming run at reference_n and Var h1 from one
/// sample of size variance_n.
struct NormalLimitConfig {
  std::size_t n = 400;
  std::size_t replicates = 1000;
  std::size_t reference_n = 20'000;
  std::size_t variance_n = 2000;
  double noise_sd = 0.5;
  std::size_t limit_draws = 100'000;
  std::uint64_t seed = 42;
  unsigned threads = 1;
};

struct NormalLimitResult {
  LimitComparison comparison;
  double v2_reference = 0.0;
  double var_h1 = 0.0;
};

NormalLimitResult simulate_normal_limit(const NormalLimitConfig& config);

}  // namespace dcov
