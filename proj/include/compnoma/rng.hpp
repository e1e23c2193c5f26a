#pragma once

#include <cmath>
#include <cstdint>

// Counter-based randomness: every variate is a pure function of
// (seed, sample_index, stream_index), so parallel and serial runs produce
// bit-identical results no matter how samples are split across workers.
namespace compnoma::rng {

// splitmix64 finalizer; bijective on 64-bit words with full avalanche
constexpr std::uint64_t mix(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

constexpr std::uint64_t word(std::uint64_t seed, std::uint64_t sample,
                             std::uint64_t stream) noexcept {
  return mix(mix(mix(seed) ^ sample) ^ stream);
}

// uniform on the open interval (0,1); the +0.5 keeps 0 and 1 unreachable
inline double uniform(std::uint64_t seed, std::uint64_t sample,
                      std::uint64_t stream) noexcept {
  return (static_cast<double>(word(seed, sample, stream) >> 11) + 0.5) * 0x1p-53;
}

// Exp(mean) by inversion
inline double exponential(double mean, std::uint64_t seed, std::uint64_t sample,
                          std::uint64_t stream) noexcept {
  return -mean * std::log(uniform(seed, sample, stream));
}

}  // namespace compnoma::rng
