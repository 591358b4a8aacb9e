// Copyright (c) 2026 fockport authors
// SPDX-License-Identifier: Apache-2.0
//
// Deterministic stream seeding: every parallel unit of work derives its own
// generator from (seed, stream), so results do not depend on thread count.

#pragma once

#include <cstdint>
#include <random>

namespace fockport {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed ^ (0xD1B54A32D192ED03ull * (stream + 1));
  std::uint64_t mixed = splitmix64_next(s);
  mixed ^= splitmix64_next(s);
  return std::mt19937_64(mixed);
}

// 53-bit uniform in [0, 1); bit-stable across platforms.
inline double uniform01(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

}  // namespace fockport
