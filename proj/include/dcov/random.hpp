#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace dcov {

using Engine = std::mt19937_64;

/// Mixes (seed, stream) into an independent 64-bit seed. Every replicate or
/// Monte Carlo chunk draws from its own stream so results do not depend on
/// how work is split across threads.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

inline Engine make_engine(std::uint64_t seed, std::uint64_t stream) {
  return Engine(derive_seed(seed, stream));
}

/// Uniform on the open interval (0, 1).
double uniform_open(Engine& engine) noexcept;

/// Uniform integer in [0, bound).
std::size_t uniform_index(Engine& engine, std::size_t bound) noexcept;

double standard_normal(Engine& engine);

/// Seeded Fisher-Yates shuffle of 0..n-1.
std::vector<std::size_t> random_permutation(std::size_t n, Engine& engine);
void shuffle_in_place(std::span<std::size_t> values, Engine& engine) noexcept;

/// k distinct indices from 0..n-1, in draw order.
std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k, Engine& engine);

}  // namespace dcov
