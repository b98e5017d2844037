#pragma once

#include <cstdint>

namespace fgsw {

// Stafford's variant 13 of the SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

// Independent substreams of one master seed.
enum class Stream : std::uint64_t {
  membership = 1,
  contacts = 2,
  pairs = 3,
  samples = 4,
  sweep = 5,
  radius = 6,
};

// Counter-based generator: every output is a pure function of the key and the
// counter words, so any (node, draw) value can be computed in any order on any
// thread.
class CounterRng {
 public:
  constexpr CounterRng(std::uint64_t seed, Stream stream) noexcept
      : key_(mix64(mix64(seed) ^ (static_cast<std::uint64_t>(stream) * 0x9e3779b97f4a7c15ULL))) {}

  constexpr std::uint64_t bits(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) const noexcept {
    std::uint64_t x = mix64(key_ ^ (a * 0x9e3779b97f4a7c15ULL));
    x = mix64(x ^ (b * 0xc2b2ae3d27d4eb4fULL));
    return mix64(x ^ (c * 0x165667b19e3779f9ULL) ^ 0xd6e8feb86659fd93ULL);
  }

  // Uniform double in [0, 1) with 53 random bits.
  constexpr double uniform(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) const noexcept {
    return static_cast<double>(bits(a, b, c) >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound); bias is at most bound / 2^64.
  std::uint64_t below(std::uint64_t bound, std::uint64_t a, std::uint64_t b = 0,
                      std::uint64_t c = 0) const noexcept {
    const unsigned __int128 product = static_cast<unsigned __int128>(bits(a, b, c)) * bound;
    return static_cast<std::uint64_t>(product >> 64);
  }

 private:
  std::uint64_t key_;
};

}  // namespace fgsw
