#pragma once

#include <cstdint>

#include "egforge/errors.hpp"
#include "egforge/natural.hpp"

namespace egforge {

/// Deterministic seedable random source (splitmix64 core). Not
/// cryptographic; it exists so that key generation and nonce choice are
/// exactly reproducible from a seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Exactly bit_count random bits (leading bit not forced).
  Natural bits(std::size_t bit_count) {
    Natural out = 0;
    std::size_t produced = 0;
    while (produced < bit_count) {
      std::uint64_t word = next_u64();
      out <<= 64;
      out += Natural(static_cast<unsigned long>(word >> 32)) << 32;
      out += static_cast<unsigned long>(word & 0xffffffffULL);
      produced += 64;
    }
    if (produced > bit_count) out >>= (produced - bit_count);
    return out;
  }

  /// Uniform in [0, bound) by rejection sampling.
  Natural below(const Natural& bound) {
    if (bound < 1) throw DomainError("Rng::below requires bound >= 1");
    std::size_t k = bit_length(bound);
    for (;;) {
      Natural candidate = bits(k);
      if (candidate < bound) return candidate;
    }
  }

  /// Uniform in [lo, hi], inclusive.
  Natural between(const Natural& lo, const Natural& hi) {
    if (lo > hi) throw DomainError("Rng::between requires lo <= hi");
    return lo + below(hi - lo + 1);
  }

 private:
  std::uint64_t state_;
};

}  // namespace egforge
