#pragma once

#include <cstdint>
#include <random>

namespace totcol {

// 64-bit LCG (Knuth's MMIX constants). Sequences are reproducible across
// platforms because ranged draws below avoid the std distributions.
using Rng = std::linear_congruential_engine<std::uint64_t, 6364136223846793005ULL, 1442695040888963407ULL, 0>;

// Uniform-ish integer in [0, bound) from the high bits of the next state.
inline std::uint64_t draw_below(Rng& rng, std::uint64_t bound) { return (rng() >> 33) % bound; }

inline int draw_int(Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(draw_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

}  // namespace totcol
