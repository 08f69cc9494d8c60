#include "findep/rng.hpp"

namespace findep {

ReducedWord random_word(Rng& rng, std::size_t min_len, std::size_t max_len, std::uint8_t rank) {
  const std::size_t len = min_len + rng.below(max_len - min_len + 1);
  WordBuilder b{ReducedWord(rank)};
  while (b.word().size() < len) {
    // 2r letters; re-draw instead of cancelling so the length is exact.
    std::uint64_t pick = rng.below(2ULL * rank);
    Letter l{static_cast<std::uint8_t>(pick / 2 + 1), pick % 2 == 0 ? std::int8_t(+1) : std::int8_t(-1)};
    if (!b.word().empty() && b.word().back() == l.inverse()) continue;
    b.push(l);
  }
  return b.take();
}

}  // namespace findep
