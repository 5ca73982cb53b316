#pragma once

#include <cstdint>
#include <cmath>

namespace phi3 {

// Stateless counter-based generator. Every draw is a pure function of
// (key, counters), so the stream seen by a given (sample, mode, step) is
// independent of iteration order, lattice size and thread count.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::uint64_t counter_word(std::uint64_t key, std::uint64_t c0,
                                  std::uint64_t c1, std::uint64_t c2) {
  std::uint64_t h = mix64(key);
  h = mix64(h ^ c0);
  h = mix64(h ^ c1);
  h = mix64(h ^ c2);
  return h;
}

// uniform in (0,1]
inline double uniform01(std::uint64_t w) {
  return static_cast<double>((w >> 11) + 1) * 0x1.0p-53;
}

// Box-Muller; one pair of independent standard normals per counter triple.
inline void gauss_pair(std::uint64_t key, std::uint64_t c0, std::uint64_t c1,
                       std::uint64_t c2, double& g0, double& g1) {
  const double u = uniform01(counter_word(key, c0, c1, 2 * c2));
  const double v = uniform01(counter_word(key, c0, c1, 2 * c2 + 1));
  const double r = std::sqrt(-2.0 * std::log(u));
  const double phi = 6.283185307179586476925286766559 * v;
  g0 = r * std::cos(phi);
  g1 = r * std::sin(phi);
}

// Stream ids. Gibbs Z-estimation and the variational objective share one
// stream so the Gibbs inequality can be checked on coupled samples.
constexpr std::uint64_t kStreamGibbs = 0x5a;
constexpr std::uint64_t kStreamBeta = 0xb7a;

// Per-sample key derived from the master seed; sample index is a counter,
// not part of any sequential state.
inline std::uint64_t sample_key(std::uint64_t master, std::uint64_t stream,
                                std::uint64_t sample) {
  return counter_word(master, 0x5eedu, stream, sample);
}

}  // namespace phi3
