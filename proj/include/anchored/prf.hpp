#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace anchored {

using Fingerprint = std::uint64_t;

// splitmix64 finalizer; bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr Fingerprint kFingerprintInit = 0x6a09e667f3bcc908ULL;

// One step of the byte fold. Fingerprints of strings that share a prefix share
// the fold state of that prefix, which lets tree kernels extend a parent's
// fingerprint to a child's in O(1).
constexpr Fingerprint fold_byte(Fingerprint h, std::uint8_t b) noexcept {
  return mix64(h ^ ((0x100ULL | b) * 0x9e3779b97f4a7c15ULL));
}

Fingerprint fingerprint_bytes(std::string_view bytes) noexcept;

// Canonical combination of two fingerprints whose order is already fixed
// (smaller key first).
constexpr Fingerprint combine_ordered(Fingerprint lo, Fingerprint hi) noexcept {
  return mix64(mix64(lo ^ 0x243f6a8885a308d3ULL) + (hi * 0x9e3779b97f4a7c15ULL));
}

// Domain tags keep the PRF outputs for different kinds of keys independent.
enum class PrfDomain : std::uint64_t {
  kEdge = 0x45444745ULL,
  kVertex = 0x56455254ULL,
  kStretch = 0x53545245ULL,
  kOffspring = 0x4f464653ULL,
  kTrial = 0x54524941ULL,
  kWalk = 0x57414c4bULL,
};

// Keyed PRF: 64 output bits for (seed, domain, fingerprint).
constexpr std::uint64_t prf64(std::uint64_t seed, PrfDomain domain, Fingerprint fp) noexcept {
  return mix64(mix64(fp ^ static_cast<std::uint64_t>(domain)) ^ mix64(seed + 0x8cb92ba72f3d8dd7ULL));
}

constexpr double to_unit(std::uint64_t x) noexcept {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

// Uniform in [0,1) for (seed, domain, fingerprint).
constexpr double prf_uniform(std::uint64_t seed, PrfDomain domain, Fingerprint fp) noexcept {
  return to_unit(prf64(seed, domain, fp));
}

// Seed derivation, version 1. Changing this is a breaking change for every
// published result.
constexpr std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial_index) noexcept {
  return prf64(master_seed, PrfDomain::kTrial, mix64(trial_index + 1));
}

// Sequential random stream for walks and tree sampling. Bounded draws avoid
// std::uniform_int_distribution so streams are identical across standard
// library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix64(seed ^ 0x5851f42d4c957f2dULL)) {}

  std::uint64_t next() { return engine_(); }

  double uniform01() { return to_unit(engine_()); }

  // Uniform on {0, ..., n-1}; n >= 1. Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t x = engine_();
    __uint128_t m = static_cast<__uint128_t>(x) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (low < threshold) {
        x = engine_();
        m = static_cast<__uint128_t>(x) * n;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace anchored
