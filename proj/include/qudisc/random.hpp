#pragma once

// Counter-based seeding: every (seed, index) pair maps to its own stream, so
// sampling split across threads reproduces the sequential result.

#include <cstdint>

namespace qudisc {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

/// Uniform double in [0, 1) from the top 53 bits.
inline double counter_uniform(std::uint64_t seed, std::uint64_t index) {
  return static_cast<double>(substream_seed(seed, index) >> 11) * 0x1.0p-53;
}

}  // namespace qudisc
