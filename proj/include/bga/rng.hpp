#pragma once

#include <cstdint>
#include <random>

namespace bga {

/// splitmix64 finalizer. All seed derivation in this project goes through
/// this mixer so that runs are reproducible from a single master seed.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Stream tags keep per-trial, shared-initial-condition and graph-sampling
// randomness on disjoint streams of the same master seed.
inline constexpr std::uint64_t kTrialStream = 0x01;
inline constexpr std::uint64_t kInitStream = 0x02;
inline constexpr std::uint64_t kGraphStream = 0x03;

/// Derives an independent 64-bit stream seed from (master, stream, index).
inline constexpr std::uint64_t derive_seed(std::uint64_t master,
                                           std::uint64_t stream,
                                           std::uint64_t index) {
  return mix64(mix64(mix64(master) ^ stream) ^ index);
}

inline std::mt19937_64 make_rng(std::uint64_t master, std::uint64_t stream,
                                std::uint64_t index) {
  return std::mt19937_64(derive_seed(master, stream, index));
}

}  // namespace bga
