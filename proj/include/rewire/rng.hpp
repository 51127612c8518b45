#pragma once

#include <cstdint>
#include <random>

namespace rewire {

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng{seed}; }

// splitmix64 step, used to derive independent per-run streams from one seed.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline Rng fork_rng(std::uint64_t seed, std::uint64_t stream) {
  return Rng{mix64(seed ^ mix64(stream))};
}

}  // namespace rewire
