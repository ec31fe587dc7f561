#pragma once

#include <cstdint>
#include <random>

namespace cubekit {

using Rng = std::mt19937_64;

/// Independent generator for substream `index` of the master seed.
/// Monte Carlo loops give every fixed-size chunk of rounds its own
/// substream, so results do not depend on how chunks map to threads.
inline Rng substream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    0x9e3779b9u};
  return Rng(seq);
}

inline Rng seeded(std::uint64_t seed) { return substream(seed, ~std::uint64_t{0}); }

}  // namespace cubekit
