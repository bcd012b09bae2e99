#pragma once

#include <cstdint>
#include <random>

namespace zslab {

using Rng = std::mt19937_64;

// Uniform in [0, bound) by rejection, so draws are identical on every
// standard library (std::uniform_int_distribution is not).
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = Rng::max() - Rng::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace zslab
