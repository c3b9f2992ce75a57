#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace fastball {

// mt19937_64 output is fixed by the standard, so seeded runs are portable.
// Distributions are implemented here rather than taken from <random>, whose
// algorithms are implementation-defined.
using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Seed of the independent stream `index` under `master`.
constexpr std::uint64_t derive_seed(std::uint64_t master,
                                    std::uint64_t index) noexcept {
  return splitmix64(splitmix64(master) ^ splitmix64(~index));
}

inline Rng make_stream(std::uint64_t master, std::uint64_t index) {
  return Rng(derive_seed(master, index));
}

std::uint64_t entropy_seed();

// Uniform integer in [0, bound), bound > 0. Lemire's multiply-shift with
// rejection, unbiased.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  using u128 = unsigned __int128;
  u128 product = u128{rng()} * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      product = u128{rng()} * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <typename T>
void fisher_yates(std::span<T> items, Rng& rng) {
  for (std::size_t k = items.size(); k > 1; --k) {
    auto pick = static_cast<std::size_t>(uniform_below(rng, k));
    using std::swap;
    swap(items[k - 1], items[pick]);
  }
}

}  // namespace fastball
