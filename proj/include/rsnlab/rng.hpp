#pragma once

#include <cstdint>
#include <random>

namespace rsn {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Engine for stream `stream` of master seed `seed`. Streams are derived by a
// splitmix64 chain, so per-sample engines are independent of worker layout.
inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
  std::uint64_t z0 = splitmix64(s), z1 = splitmix64(s), z2 = splitmix64(s), z3 = splitmix64(s);
  std::seed_seq seq{
      static_cast<std::uint32_t>(z0), static_cast<std::uint32_t>(z0 >> 32),
      static_cast<std::uint32_t>(z1), static_cast<std::uint32_t>(z1 >> 32),
      static_cast<std::uint32_t>(z2), static_cast<std::uint32_t>(z2 >> 32),
      static_cast<std::uint32_t>(z3), static_cast<std::uint32_t>(z3 >> 32)};
  return Rng(seq);
}

// Unbiased draw from {0, ..., n-1} (Lemire multiply-shift with rejection).
inline std::uint64_t rng_below(Rng& g, std::uint64_t n) {
  unsigned __int128 m = static_cast<unsigned __int128>(g()) * n;
  auto lo = static_cast<std::uint64_t>(m);
  if (lo < n) {
    std::uint64_t t = (-n) % n;
    while (lo < t) {
      m = static_cast<unsigned __int128>(g()) * n;
      lo = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

// Uniform double in [0, 1) with 53 random bits.
inline double rng_unit(Rng& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

inline double rng_normal(Rng& g) {
  std::normal_distribution<double> d(0.0, 1.0);
  return d(g);
}

}  // namespace rsn
