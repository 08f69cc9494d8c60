#pragma once

#include <string>
#include <vector>

#include "findep/independence.hpp"
#include "findep/tower.hpp"

namespace findep {

struct LemmaReport {
  std::string lemma;
  std::uint64_t instances = 0;
  std::uint64_t counterexamples = 0;
  std::vector<std::string> first_failures;  // at most a handful, for the report
  bool pass() const { return instances > 0 && counterexamples == 0; }
};

struct LemmaBudget {
  int depth = 3;
  int word_len = 14;            // |t| bound for sampled-word statements
  std::uint64_t samples = 10000;
  std::uint64_t seed = 1;
};

/// Coset translation consistency: if some x has s1 x, s2 x landing in marked
/// classes at levels n1 < n2, then t = s1 s2^-1 lies in the marked class at
/// n1, and any y with s2 y marked at m2 > n1 forces s1 y marked at n1.
/// Exhaustive over the coset quotient at the given depth.
template <class E>
LemmaReport verify_lemma_rf1(const QuotientTower<E>& tower, int depth, const ExecPolicy& pol = {});

/// Three-element exclusion: with s_i x in marked classes at n1 < min(n2, n3),
/// no y has s1 y, s2 y outside all marked classes while s3 y is inside one.
template <class E>
LemmaReport verify_lemma_rf2(const QuotientTower<E>& tower, int depth, const ExecPolicy& pol = {});

/// Two-situation dichotomy for a second point when a first point realizes
/// distinct levels n1 < n2. Exhaustive over coset pairs at the given depth.
template <class E>
LemmaReport verify_lemma_free1(const QuotientTower<E>& tower, int depth, const ExecPolicy& pol = {});

/// Level rigidity: if some z has s1 z, s2 z both in the level-n marked class,
/// then for any z' with s2 z' at level m: m = n iff s1 z' is at level n.
template <class E>
LemmaReport verify_lemma_free5(const QuotientTower<E>& tower, int depth, const ExecPolicy& pol = {});

/// Cylinder-intersection shapes: a nontrivial t with t D_{n2} meeting D_{n1}
/// ends with u_{n2}^-1, starts with u_{n1}, or equals u_{n1} u_{n2}^-1.
/// Random words up to the budget length.
LemmaReport verify_lemma_free2(const LemmaBudget& budget, const ExecPolicy& pol = {});

/// Cylinder translation for t not starting with u_n: t y in D_n iff y starts
/// with t^-1 u_n. Checked as oracle agreement between the translated
/// constraint and the direct product computation on random prefixes.
LemmaReport verify_lemma_free6(const LemmaBudget& budget, const ExecPolicy& pol = {});

/// Same for t starting with u_n: t y in D_n iff y avoids t^-1 u_n b.
LemmaReport verify_lemma_free7(const LemmaBudget& budget, const ExecPolicy& pol = {});

/// Name-based dispatcher for the CLI: rf1, rf2, free1, free2, free5, free6,
/// free7. The integer tower serves the rf* names, the word tower the free*
/// coset names.
LemmaReport verify_lemma(const std::string& name, const IntegerTower* zt,
                         const QuotientTower<ReducedWord>* wt, const LemmaBudget& budget,
                         const ExecPolicy& pol = {});

}  // namespace findep
