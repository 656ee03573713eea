#include <cmath>

#include "dcov/datagen.hpp"
#include "dcov/errors.hpp"
#include "dcov/parallel.hpp"
#include "dcov/random.hpp"
#include "dcov/summary.hpp"
#include "dcov/ustat_theory.hpp"

namespace dcov {
namespace {

// Streams 0..9 are reserved for one-off draws; replicate r uses stream 16 + r.
constexpr std::uint64_t kSpectrumStream = 1;
constexpr std::uint64_t kBasisStream = 2;
constexpr std::uint64_t kLimitStream = 3;
constexpr std::uint64_t kReferenceStream = 4;
constexpr std::uint64_t kVarianceStream = 5;
constexpr std::uint64_t kReplicateBase = 16;

PairedSample independent_normals(std::size_t n, std::uint64_t seed) {
  ShapeSpec spec;
  spec.shape = Shape::independent;
  spec.n = n;
  spec.seed = seed;
  return generate(spec);
}

// X ~ N(0, 1), Y = X + noise_sd * E.
PairedSample noisy_copy(std::size_t n, double noise_sd, std::uint64_t seed) {
  Engine engine = make_engine(seed, 0);
  Matrix x(n, 1), y(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    x(i, 0) = standard_normal(engine);
    y(i, 0) = x(i, 0) + noise_sd * standard_normal(engine);
  }
  return PairedSample(std::move(x), std::move(y));
}

}  // namespace

NullLimitResult simulate_null_limit(const NullLimitConfig& config) {
  if (config.n < 4) throw SampleSizeError("simulate_null_limit", 4, config.n);
  if (config.replicates == 0 || config.limit_draws == 0) {
    throw DomainError("simulate_null_limit: replicate counts must be positive");
  }
  NullLimitResult result;
  auto& cmp = result.comparison;
  cmp.empirical.resize(config.replicates);
  const double n = static_cast<double>(config.n);
  parallel_for(config.replicates, config.threads, [&](std::size_t r) {
    const auto sample = independent_normals(config.n, derive_seed(config.seed, kReplicateBase + r));
    cmp.empirical[r] = n * dcov_usq_fast(sample).value;
  });

  const auto reference =
      independent_normals(config.spectrum_n, derive_seed(config.seed, kSpectrumStream));
  result.spectrum = h2_spectrum(reference, config.basis, derive_seed(config.seed, kBasisStream),
                                config.threads);
  cmp.limit = sample_degenerate_limit(result.spectrum, config.limit_draws,
                                      derive_seed(config.seed, kLimitStream), config.threads);
  cmp.ks_distance = ks_distance(cmp.empirical, cmp.limit);
  return result;
}

NormalLimitResult simulate_normal_limit(const NormalLimitConfig& config) {
  if (config.n < 4) throw SampleSizeError("simulate_normal_limit", 4, config.n);
  if (config.replicates == 0 || config.limit_draws == 0) {
    throw DomainError("simulate_normal_limit: replicate counts must be positive");
  }
  NormalLimitResult result;
  const auto reference = noisy_copy(config.reference_n, config.noise_sd,
                                    derive_seed(config.seed, kReferenceStream));
  result.v2_reference = dcov_usq_streaming(reference, config.threads).value;

  const auto variance_sample = noisy_copy(config.variance_n, config.noise_sd,
                                          derive_seed(config.seed, kVarianceStream));
  result.var_h1 = var_h1_hat(variance_sample, config.variance_n,
                             derive_seed(config.seed, kVarianceStream));

  auto& cmp = result.comparison;
  cmp.empirical.resize(config.replicates);
  const double root_n = std::sqrt(static_cast<double>(config.n));
  parallel_for(config.replicates, config.threads, [&](std::size_t r) {
    const auto sample =
        noisy_copy(config.n, config.noise_sd, derive_seed(config.seed, kReplicateBase + r));
    cmp.empirical[r] = root_n * (dcov_usq_fast(sample).value - result.v2_reference);
  });
  cmp.limit = sample_normal_limit(result.var_h1, config.limit_draws,
                                  derive_seed(config.seed, kLimitStream));
  cmp.ks_distance = ks_distance(cmp.empirical, cmp.limit);
  return result;
}

}  // namespace dcov
