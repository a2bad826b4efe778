#pragma once

// Counter-based pseudo-randomness built on the SplitMix64 finalizer.  Every
// draw is a pure function of (seed, counter), so a shot loop can be split
// across threads -- or reordered entirely -- without changing a single draw.
// Sub-streams (one per circuit of a benchmark) are derived with the same
// mixer; the derivation chain is documented in the README under
// "Determinism".

#include <cstdint>
#include <string_view>

namespace mdbench {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// Default master seed used when neither the backend file nor the
// environment provides one.
inline constexpr std::uint64_t kDefaultSeed = 0x5eed;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derives the seed of an independent sub-stream identified by `key`.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t key) {
  return mix64(seed + kGolden * (key + 1));
}

// Uniform double in [0, 1): draw number `counter` of stream `seed`.
constexpr double unit_double(std::uint64_t seed, std::uint64_t counter) {
  return static_cast<double>(derive_seed(seed, counter) >> 11) * 0x1.0p-53;
}

// FNV-1a string hash; used to fold circuit names into sub-stream keys.
constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace mdbench
