#pragma once

#include <cstdint>

#include "findep/word.hpp"

namespace findep {

/// SplitMix64; self-contained so that seeded runs are byte-identical across
/// platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

  /// Derives an independent stream; used to seed per-sample work inside
  /// parallel loops deterministically.
  static Rng stream(std::uint64_t seed, std::uint64_t index) {
    Rng r(seed ^ (0x632be59bd9b4e019ULL * (index + 1)));
    r.next();
    return r;
  }

 private:
  std::uint64_t state_;
};

/// Uniform random reduced word with length in [min_len, max_len].
ReducedWord random_word(Rng& rng, std::size_t min_len, std::size_t max_len, std::uint8_t rank = 2);

}  // namespace findep
