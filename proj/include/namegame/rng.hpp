#pragma once

#include <cmath>
#include <cstdint>

namespace namegame::rng {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// splitmix64 finalizer. Bijective on 64-bit values.
inline std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// index-th value of the stream owned by seed. Pure function, so any parent
// or sample index can be evaluated independently of all others; results do
// not depend on evaluation order or thread count.
inline std::uint64_t stream(std::uint64_t seed, std::uint64_t index) {
  return mix(seed + kGolden * (index + 1));
}

// Decorrelated child seed (e.g. one per simulation step).
inline std::uint64_t derive(std::uint64_t seed, std::uint64_t child) {
  return mix(stream(seed, child) ^ kGolden);
}

// Maps to the open interval (0, 1); both endpoints are unreachable, which
// keeps log(u) finite in Box-Muller.
inline double to_unit(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

// Standard normal via Box-Muller; consumes stream slots 2*index and
// 2*index+1 so draws stay independent across indices.
inline double standard_normal(std::uint64_t seed, std::uint64_t index) {
  double u1 = to_unit(stream(seed, 2 * index));
  double u2 = to_unit(stream(seed, 2 * index + 1));
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(6.283185307179586476925286766559 * u2);
}

// Uniform pick from {0, ..., n-1} using the high bits (Lemire reduction).
inline std::uint64_t pick(std::uint64_t seed, std::uint64_t index, std::uint64_t n) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(stream(seed, index)) * n) >> 64);
}

}  // namespace namegame::rng
