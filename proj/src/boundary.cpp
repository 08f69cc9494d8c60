#include "findep/boundary.hpp"

#include <algorithm>

namespace findep {

PrefixConstraint translate_cylinder(const ReducedWord& t, int n, bool want_in) {
  const ReducedWord un = word_u(n, t.rank());
  if (starts_with(t, un)) {
    // t = u_n s with s not starting with b, so t y lies in D_n exactly when
    // y avoids the single bad cylinder t^-1 u_n b.
    ReducedWord bad = mul(inv(t), mul(un, parse("b", t.rank())));
    return {want_in ? Polarity::must_not_start_with : Polarity::must_start_with, std::move(bad)};
  }
  ReducedWord good = mul(inv(t), un);
  return {want_in ? Polarity::must_start_with : Polarity::must_not_start_with, std::move(good)};
}

namespace {

// DFS over reduced extensions of `cur` up to length `target`, avoiding every
// negative word as a literal prefix. Branching is 2r-1 >= 3, negatives are
// finitely many, so the search is exact.
bool extend(ReducedWord& cur, std::size_t target, const std::vector<const ReducedWord*>& negs,
            ReducedWord* found) {
  for (const ReducedWord* n : negs)
    if (starts_with(cur, *n)) return false;
  if (cur.size() >= target) {
    if (found) *found = cur;
    return true;
  }
  const std::uint8_t r = cur.rank();
  for (std::uint8_t g = 1; g <= r; ++g) {
    for (std::int8_t s : {std::int8_t(+1), std::int8_t(-1)}) {
      Letter l{g, s};
      if (!cur.empty() && cur.back() == l.inverse()) continue;
      WordBuilder b(cur);
      b.push(l);
      ReducedWord next = b.take();
      if (extend(next, target, negs, found)) return true;
    }
  }
  return false;
}

}  // namespace

std::optional<WitnessPrefix> satisfiable(const PrefixConstraintSet& cs) {
  std::uint8_t rank = 2;
  for (const auto& c : cs.constraints) rank = c.word.rank();

  // Positive constraints must be a chain in the literal prefix order.
  ReducedWord base(rank);
  for (const auto& c : cs.constraints) {
    if (c.polarity != Polarity::must_start_with) continue;
    if (c.word.size() > base.size()) {
      if (!starts_with(c.word, base)) return std::nullopt;
      base = c.word;
    } else if (!starts_with(base, c.word)) {
      return std::nullopt;
    }
  }

  std::vector<const ReducedWord*> negs;
  std::size_t max_neg = 0;
  for (const auto& c : cs.constraints) {
    if (c.polarity != Polarity::must_not_start_with) continue;
    if (c.word.empty()) return std::nullopt;  // "not starting with e" is empty
    negs.push_back(&c.word);
    max_neg = std::max(max_neg, c.word.size());
  }

  const std::size_t target = std::max({base.size(), max_neg + 1, std::size_t(1)});
  ReducedWord cur = base;
  ReducedWord found(rank);
  if (!extend(cur, target, negs, &found)) return std::nullopt;
  WitnessPrefix w;
  w.prefix = found;
  w.certified_depth = static_cast<int>(found.size());
  w.a_infinity_excluded = cs.exclude_a_infinity;
  return w;
}

bool validate_witness(const PrefixConstraintSet& cs, const WitnessPrefix& w) {
  for (const auto& c : cs.constraints) {
    if (c.polarity == Polarity::must_start_with) {
      if (!starts_with(w.prefix, c.word)) return false;
    } else {
      if (starts_with(w.prefix, c.word)) return false;
      // The certificate must already outlast this negative word.
      if (c.word.size() > static_cast<std::size_t>(w.certified_depth)) return false;
    }
  }
  // One further reduced extension avoiding all negatives must exist.
  std::vector<const ReducedWord*> negs;
  for (const auto& c : cs.constraints)
    if (c.polarity == Polarity::must_not_start_with) negs.push_back(&c.word);
  ReducedWord cur = w.prefix;
  return extend(cur, w.prefix.size() + 1, negs, nullptr);
}

std::optional<ReducedWord> extend_witness(const PrefixConstraintSet& cs, const ReducedWord& from,
                                          std::size_t target) {
  std::vector<const ReducedWord*> negs;
  for (const auto& c : cs.constraints)
    if (c.polarity == Polarity::must_not_start_with) negs.push_back(&c.word);
  ReducedWord cur = from;
  ReducedWord found(from.rank());
  if (!extend(cur, std::max(target, from.size()), negs, &found)) return std::nullopt;
  return found;
}

Membership member_prefix(const ReducedWord& y_prefix, const ReducedWord& t, int n) {
  const ReducedWord un = word_u(n, t.rank() >= 2 ? t.rank() : y_prefix.rank());
  // Cancellation length at the junction of t and y_prefix.
  std::size_t j = 0;
  while (j < t.size() && j < y_prefix.size() &&
         t[t.size() - 1 - j] == y_prefix[j].inverse())
    ++j;
  if (j == y_prefix.size()) {
    // The whole prefix cancels into t; extensions can then cancel arbitrarily
    // deep into what remains, so nothing is pinned down.
    return Membership::undetermined;
  }
  ReducedWord w = mul(t, y_prefix);
  if (w.size() >= un.size()) return starts_with(w, un) ? Membership::in : Membership::out;
  return starts_with(un, w) ? Membership::undetermined : Membership::out;
}

Membership eval_constraint_on_prefix(const PrefixConstraint& c, const ReducedWord& y_prefix) {
  const ReducedWord& w = c.word;
  Membership starts;
  if (y_prefix.size() >= w.size())
    starts = starts_with(y_prefix, w) ? Membership::in : Membership::out;
  else
    starts = starts_with(w, y_prefix) ? Membership::undetermined : Membership::out;
  if (c.polarity == Polarity::must_start_with) return starts;
  switch (starts) {
    case Membership::in: return Membership::out;
    case Membership::out: return Membership::in;
    default: return Membership::undetermined;
  }
}

std::string to_string(const PrefixConstraint& c) {
  return std::string("{\"polarity\": \"") +
         (c.polarity == Polarity::must_start_with ? "+" : "-") + "\", \"word\": \"" +
         format(c.word) + "\"}";
}

std::string to_string(const PrefixConstraintSet& cs) {
  std::string out = "[";
  for (std::size_t i = 0; i < cs.constraints.size(); ++i) {
    if (i) out += ", ";
    out += to_string(cs.constraints[i]);
  }
  out += "]";
  if (cs.exclude_a_infinity) out += " minus a^oo";
  return out;
}

}  // namespace findep
