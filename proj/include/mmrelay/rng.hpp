#pragma once

#include <cstdint>
#include <random>

namespace mmrelay {

// Every random draw in the simulator flows through mt19937_64 plus the fixed
// mappings below. std::uniform_real_distribution is implementation-defined,
// so replaying a seed through it is not portable; these mappings are.
using Rng = std::mt19937_64;

// Uniform double in [0, 1) from the top 53 bits of one generator draw.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform index in [0, n), n >= 1. One uniform01 draw, scaled and floored.
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  const auto i = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n));
  return i < n ? i : n - 1;
}

// splitmix64 finalizer over (base, salt). Child streams (one per strategy in
// a run, for example) must not overlap and the rule has to replay across
// implementations.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace mmrelay
