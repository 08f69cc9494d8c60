#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace findep {

/// A single generator or inverse generator of a rank-r free group.
/// generator_index is 1-based; sign is +1 or -1.
struct Letter {
  std::uint8_t generator_index = 1;
  std::int8_t sign = +1;

  friend bool operator==(const Letter& a, const Letter& b) {
    return a.generator_index == b.generator_index && a.sign == b.sign;
  }
  friend bool operator!=(const Letter& a, const Letter& b) { return !(a == b); }

  Letter inverse() const { return Letter{generator_index, static_cast<std::int8_t>(-sign)}; }
};

class WordTooLong : public std::length_error {
 public:
  explicit WordTooLong(std::size_t n)
      : std::length_error("reduced word length " + std::to_string(n) + " exceeds configured cap") {}
};

/// Hard cap on word length; multiplication that would exceed it throws
/// WordTooLong instead of silently producing huge words.
std::size_t word_length_cap();
void set_word_length_cap(std::size_t cap);

/// A freely reduced word over the generators of a rank-r free group.
/// The empty word is the identity. Words of different rank never mix.
class ReducedWord {
 public:
  ReducedWord() = default;
  explicit ReducedWord(std::uint8_t rank) : rank_(rank) {}

  /// Builds from a raw letter sequence, freely reducing it.
  ReducedWord(std::uint8_t rank, const std::vector<Letter>& raw);

  std::uint8_t rank() const { return rank_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const std::vector<Letter>& letters() const { return letters_; }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }
  const Letter& front() const { return letters_.front(); }
  const Letter& back() const { return letters_.back(); }

  friend bool operator==(const ReducedWord& a, const ReducedWord& b) {
    return a.rank_ == b.rank_ && a.letters_ == b.letters_;
  }
  friend bool operator!=(const ReducedWord& a, const ReducedWord& b) { return !(a == b); }
  /// Length-lexicographic order; used for deterministic enumeration.
  friend bool operator<(const ReducedWord& a, const ReducedWord& b);

  /// Literal sub-range [from, to) as a word (already reduced).
  ReducedWord slice(std::size_t from, std::size_t to) const;

 private:
  friend ReducedWord mul(const ReducedWord&, const ReducedWord&);
  friend ReducedWord inv(const ReducedWord&);
  friend class WordBuilder;

  std::uint8_t rank_ = 2;
  std::vector<Letter> letters_;
};

/// Incremental builder that keeps the word reduced letter by letter.
class WordBuilder {
 public:
  explicit WordBuilder(std::uint8_t rank) : w_(rank) {}
  explicit WordBuilder(ReducedWord w) : w_(std::move(w)) {}
  void push(Letter l);
  void pop() { w_.letters_.pop_back(); }
  const ReducedWord& word() const { return w_; }
  ReducedWord take() { return std::move(w_); }

 private:
  ReducedWord w_;
};

/// Parses the single-token grammar: lowercase letter = generator,
/// uppercase = inverse (a/A = 1, b/B = 2, c/C = 3, ...). A letter may carry
/// an exponent written ^k or ^-k. Whitespace is ignored.
/// Throws std::invalid_argument on malformed tokens or out-of-rank letters.
ReducedWord parse(const std::string& text, std::uint8_t rank = 2);

/// Inverse of parse: format(parse(s)) is the canonical spelling.
std::string format(const ReducedWord& w);

/// Freely reduced product. Throws on mixed ranks or cap overflow.
ReducedWord mul(const ReducedWord& x, const ReducedWord& y);

/// Inverse word: letters reversed with flipped signs.
ReducedWord inv(const ReducedWord& x);

/// The commutator-like word u_n = a^n b a^-n b^-1 of length 2n + 2.
/// Requires n >= 2.
ReducedWord word_u(int n, std::uint8_t rank = 2);

/// True iff p's letters are a literal prefix of w's letters. For reduced
/// words this coincides with the no-cancellation decomposition w = p w'.
bool starts_with(const ReducedWord& w, const ReducedWord& p);

/// Suffix analogue: ends_with(w, s) == starts_with(inv(w), inv(s)).
bool ends_with(const ReducedWord& w, const ReducedWord& s);

/// True iff one of a, b is a literal prefix of the other.
bool prefix_compatible(const ReducedWord& a, const ReducedWord& b);

/// Index m >= 2 such that u_m is a literal prefix of w, if any. The initial
/// a-run of w determines the only possible candidate, so the index is unique.
std::optional<int> u_prefix_index(const ReducedWord& w);

/// Index n >= 2 such that u_n^-1 is a literal suffix of w, if any.
std::optional<int> u_suffix_index(const ReducedWord& w);

/// Shape families for structural decomposition of a reduced word.
enum class ShapeFamily {
  prefix_suffix,  // t = u_m v u_n^-1 with v nonempty
  prefix_only,    // t = u_m v
  suffix_only,    // t = v u_n^-1
  double_u,       // t = u_m u_n^-1 with m != n
};

struct StructuralForm {
  ShapeFamily family;
  int prefix_index = 0;  // m of the leading u_m, 0 if unused
  int suffix_index = 0;  // n of the trailing u_n^-1, 0 if unused
  ReducedWord middle;    // v; empty allowed for prefix/suffix_only
  // Side conditions reported per match.
  bool v_nontrivial = false;
  bool v_not_starting_b = false;
  bool v_not_ending_b_inv = false;
};

/// All matches of t against the four shape families. Reassembling any match
/// via mul reproduces t exactly.
std::vector<StructuralForm> decompose(const ReducedWord& t);

/// Reassembles a structural form; used by tests as the round-trip check.
ReducedWord reassemble(const StructuralForm& f, std::uint8_t rank);

}  // namespace findep
