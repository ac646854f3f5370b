#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace maxstable {

/// Random state used throughout the library. Every stochastic operation takes
/// one explicitly; nothing draws from global state.
using Rng = std::mt19937_64;

/// Deterministic child state for task `stream` of a run seeded with `seed`.
inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    0x6d617873u};
  return Rng(seq);
}

/// Uniform on the open interval (0,1).
inline double uniform_open(Rng& rng) {
  // 53 random bits shifted by half an ulp so that 0 is never returned.
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

inline double standard_exponential(Rng& rng) { return -std::log(uniform_open(rng)); }

using NormalDist = std::normal_distribution<double>;

}  // namespace maxstable
