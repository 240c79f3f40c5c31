// Copyright 2026 The fdrasim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Deterministic seed derivation. Every stochastic component draws from its
// own substream so that adding a consumer never perturbs the others.

#pragma once

#include <cstdint>

namespace fdra {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Stream tags for the independent random substreams of a simulation run.
inline constexpr std::uint64_t kChannelStream = 0x01;
inline constexpr std::uint64_t kTrafficStream = 0x02;
inline constexpr std::uint64_t kSchedulerStream = 0x03;
inline constexpr std::uint64_t kRankStream = 0x04;

// Mixes (seed, stream, member) into one well-spread 64-bit seed.
inline std::uint64_t deriveSeed(std::uint64_t seed, std::uint64_t stream,
                                std::uint64_t member = 0) {
  std::uint64_t s = seed;
  std::uint64_t h = splitmix64(s);
  s = h ^ (stream + 0x9e3779b97f4a7c15ULL + (h << 12) + (h >> 4));
  h = splitmix64(s);
  s = h ^ (member + 0x9e3779b97f4a7c15ULL + (h << 12) + (h >> 4));
  return splitmix64(s);
}

}  // namespace fdra
