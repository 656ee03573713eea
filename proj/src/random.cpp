#include "dcov/random.hpp"

#include <numeric>
#include <utility>

namespace dcov {
namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

double uniform_open(Engine& engine) noexcept {
  // 53 random bits, shifted to the midpoint of their cell.
  const std::uint64_t bits = engine() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

std::size_t uniform_index(Engine& engine, std::size_t bound) noexcept {
  std::uniform_int_distribution<std::size_t> dist(0, bound - 1);
  return dist(engine);
}

double standard_normal(Engine& engine) {
  std::normal_distribution<double> dist(0.0, 1.0);
  return dist(engine);
}

void shuffle_in_place(std::span<std::size_t> values, Engine& engine) noexcept {
  for (std::size_t i = values.size(); i > 1; --i) {
    const std::size_t j = uniform_index(engine, i);
    std::swap(values[i - 1], values[j]);
  }
}

std::vector<std::size_t> random_permutation(std::size_t n, Engine& engine) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  shuffle_in_place(perm, engine);
  return perm;
}

std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k, Engine& engine) {
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < k && i < n; ++i) {
    const std::size_t j = i + uniform_index(engine, n - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(std::min(k, n));
  return pool;
}

}  // namespace dcov
