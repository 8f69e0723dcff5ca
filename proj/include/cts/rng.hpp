#pragma once

#include <cstdint>
#include <random>

namespace cts {

/// Every stochastic component takes one of these by reference; nothing owns a
/// hidden generator.
using Rng = std::mt19937_64;

/// SplitMix64 finalizer, used to derive independent seeds from a base seed.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace cts
