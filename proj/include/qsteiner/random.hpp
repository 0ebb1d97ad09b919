#pragma once

#include <cstdint>
#include <random>

namespace qsteiner {

// Uniform integer in [0, bound) from a 64-bit engine. Unlike
// std::uniform_int_distribution the result sequence is the same on every platform.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t x = rng();
    const unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
    if (static_cast<std::uint64_t>(m) >= threshold) return static_cast<std::uint64_t>(m >> 64);
  }
}

}  // namespace qsteiner
