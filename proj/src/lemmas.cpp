#include "findep/lemmas.hpp"

#include <algorithm>

#include "findep/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace findep {

namespace {

// Unique marked level of a coset in [2..depth], or 0.
template <class E>
int c_level(const QuotientTower<E>& t, const CosetId& c, int depth) {
  for (int n = 2; n <= depth; ++n)
    if (t.in_C(c, n)) return n;
  return 0;
}

// Every coset in a marked class, with its level. Hypotheses of the coset
// lemmas only involve these, so the exhaustive pair scans restrict to them.
template <class E>
std::vector<std::pair<CosetId, int>> marked_cosets(const QuotientTower<E>& t, int depth) {
  std::vector<std::pair<CosetId, int>> out;
  for (std::uint64_t i = 0; i < t.index(depth); ++i) {
    const CosetId c = t.coset_at(depth, i);
    const int lev = c_level(t, c, depth);
    if (lev) out.emplace_back(c, lev);
  }
  return out;
}

template <class E>
std::vector<CosetId> descend_all(const QuotientTower<E>& t, const CosetId& base, int to_level) {
  std::vector<CosetId> cur{base};
  while (!cur.empty() && cur.front().level < to_level) {
    std::vector<CosetId> next;
    for (const CosetId& c : cur)
      for (const CosetId& ch : t.children(c)) next.push_back(ch);
    cur = std::move(next);
  }
  return cur;
}

void note_failure(LemmaReport& rep, const std::string& msg) {
  ++rep.counterexamples;
  if (rep.first_failures.size() < 5) rep.first_failures.push_back(msg);
}

int set_threads(const ExecPolicy& pol) {
#ifdef _OPENMP
  return pol.workers > 0 ? pol.workers : omp_get_max_threads();
#else
  (void)pol;
  return 1;
#endif
}

}  // namespace

template <class E>
LemmaReport verify_lemma_rf1(const QuotientTower<E>& tower, int depth, const ExecPolicy& pol) {
  LemmaReport rep;
  rep.lemma = "rf1";
  const std::uint64_t count = tower.index(depth);
  const auto marked = marked_cosets(tower, depth);
  const int threads = set_threads(pol);
  std::uint64_t instances = 0, bad = 0;
  std::string first;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads) \
    reduction(+ : instances, bad)
#endif
  for (std::int64_t ti = 0; ti < static_cast<std::int64_t>(count); ++ti) {
    const CosetId tau = tower.coset_at(depth, static_cast<std::uint64_t>(ti));
    // Pass 1: level pairs (n1 < n2) realized by some x, with multiplicity.
    std::uint64_t cnt[8][8] = {};
    for (const auto& [zeta, j2] : marked) {
      int j1 = c_level(tower, tower.coset_mul(tau, zeta), depth);
      if (j1 >= 2 && j1 < j2) ++cnt[j1][j2];
    }
    bool any = false;
    for (int n1 = 2; n1 <= depth && !any; ++n1)
      for (int n2 = n1 + 1; n2 <= depth && !any; ++n2)
        if (cnt[n1][n2]) any = true;
    if (!any) continue;
    // Pass 2: every y with s2 y marked and s1 y off the n1 class must sit at
    // a level m2 <= n1.
    for (const auto& [zp, m2] : marked) {
      const int l1 = c_level(tower, tower.coset_mul(tau, zp), depth);
      for (int n1 = 2; n1 <= depth; ++n1)
        for (int n2 = n1 + 1; n2 <= depth; ++n2) {
          if (!cnt[n1][n2]) continue;
          if (l1 == n1) continue;  // hypothesis s1 y outside C_{n1} fails
          instances += cnt[n1][n2];
          if (m2 > n1) {
            bad += cnt[n1][n2];
            if (first.empty())
              first = "tau id " + std::to_string(tau.id) + ": levels (" + std::to_string(n1) +
                      "," + std::to_string(n2) + ") but m2=" + std::to_string(m2);
          }
        }
    }
  }
  rep.instances = instances;
  rep.counterexamples = bad;
  if (!first.empty()) rep.first_failures.push_back(first);
  return rep;
}

template <class E>
LemmaReport verify_lemma_rf2(const QuotientTower<E>& tower, int depth, const ExecPolicy& pol) {
  LemmaReport rep;
  rep.lemma = "rf2";
  const std::uint64_t count = tower.index(depth);
  (void)pol;
  for (int n1 = 2; n1 <= depth; ++n1)
    for (int n2 = n1 + 1; n2 <= depth; ++n2)
      for (int n3 = n1 + 1; n3 <= depth; ++n3) {
        for (std::uint64_t ai = 0; ai < count; ++ai) {
          const CosetId alpha = tower.coset_at(depth, ai);
          if (!tower.in_C(alpha, n1)) continue;
          // delta_i alpha must land in the marked class at n_i.
          const CosetId k2 =
              tower.coset_mul(tower.marked_coset(n2), tower.coset_inv(tower.reduce(alpha, n2)));
          const CosetId k3 =
              tower.coset_mul(tower.marked_coset(n3), tower.coset_inv(tower.reduce(alpha, n3)));
          for (const CosetId& d2 : descend_all(tower, k2, depth))
            for (const CosetId& d3 : descend_all(tower, k3, depth)) {
              for (std::uint64_t yi = 0; yi < count; ++yi) {
                const CosetId ap = tower.coset_at(depth, yi);
                ++rep.instances;
                const bool y1_out = c_level(tower, ap, depth) == 0;
                const bool y2_out =
                    c_level(tower, tower.coset_mul(tower.reduce(d2, depth), ap), depth) == 0;
                const bool y3_in =
                    c_level(tower, tower.coset_mul(tower.reduce(d3, depth), ap), depth) != 0;
                if (y1_out && y2_out && y3_in)
                  note_failure(rep, "levels (" + std::to_string(n1) + "," + std::to_string(n2) +
                                        "," + std::to_string(n3) + ") alpha' id " +
                                        std::to_string(ap.id));
              }
            }
        }
      }
  return rep;
}

template <class E>
LemmaReport verify_lemma_free1(const QuotientTower<E>& tower, int depth, const ExecPolicy& pol) {
  LemmaReport rep;
  rep.lemma = "free1";
  const std::uint64_t count = tower.index(depth);
  const auto marked = marked_cosets(tower, depth);
  const int threads = set_threads(pol);
  std::uint64_t instances = 0, bad = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads) \
    reduction(+ : instances, bad)
#endif
  for (std::int64_t ti = 0; ti < static_cast<std::int64_t>(count); ++ti) {
    const CosetId tau = tower.coset_at(depth, static_cast<std::uint64_t>(ti));
    std::uint64_t diff_cnt[8][8] = {};
    for (const auto& [zeta, j2] : marked) {
      int j1 = c_level(tower, tower.coset_mul(tau, zeta), depth);
      if (j1 >= 2 && j1 < j2) ++diff_cnt[j1][j2];
    }
    for (int n1 = 2; n1 <= depth; ++n1)
      for (int n2 = n1 + 1; n2 <= depth; ++n2) {
        if (!diff_cnt[n1][n2]) continue;
        // Conclusion part 1: t itself is in the marked class at n1.
        instances += diff_cnt[n1][n2];
        if (!(tower.reduce(tau, n1) == tower.marked_coset(n1))) {
          bad += diff_cnt[n1][n2];
          continue;
        }
        // Conclusion part 2 over every second point with both levels defined.
        for (const auto& [zp, m2] : marked) {
          const int m1 = c_level(tower, tower.coset_mul(tau, zp), depth);
          if (m1 == 0) continue;
          instances += diff_cnt[n1][n2];
          const bool situation1 = (m1 == n1 && n1 < m2);
          const bool situation2 = (m1 == m2 && m2 < n1);
          if (!situation1 && !situation2) bad += diff_cnt[n1][n2];
        }
      }
  }
  rep.instances = instances;
  rep.counterexamples = bad;
  return rep;
}

template <class E>
LemmaReport verify_lemma_free5(const QuotientTower<E>& tower, int depth, const ExecPolicy& pol) {
  LemmaReport rep;
  rep.lemma = "free5";
  const std::uint64_t count = tower.index(depth);
  const auto marked = marked_cosets(tower, depth);
  const int threads = set_threads(pol);
  std::uint64_t instances = 0, bad = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads) \
    reduction(+ : instances, bad)
#endif
  for (std::int64_t ti = 0; ti < static_cast<std::int64_t>(count); ++ti) {
    const CosetId tau = tower.coset_at(depth, static_cast<std::uint64_t>(ti));
    std::uint64_t same_cnt[8] = {};
    for (const auto& [zeta, lev] : marked)
      if (tower.in_C(tower.coset_mul(tau, zeta), lev)) ++same_cnt[lev];
    bool any = false;
    for (int n = 2; n <= depth; ++n)
      if (same_cnt[n]) any = true;
    if (!any) continue;
    for (const auto& [zp, m] : marked) {
      const CosetId moved = tower.coset_mul(tau, zp);
      for (int n = 2; n <= depth; ++n) {
        if (!same_cnt[n]) continue;
        instances += same_cnt[n];
        const bool lhs = (m == n);
        const bool rhs = tower.in_C(moved, n);
        if (lhs != rhs) bad += same_cnt[n];
      }
    }
  }
  rep.instances = instances;
  rep.counterexamples = bad;
  return rep;
}

LemmaReport verify_lemma_free2(const LemmaBudget& budget, const ExecPolicy& pol) {
  LemmaReport rep;
  rep.lemma = "free2";
  (void)pol;
  const int max_n = std::max(2, budget.word_len / 2 - 1);
  Rng rng(budget.seed);
  for (std::uint64_t s = 0; s < budget.samples; ++s) {
    const ReducedWord t = random_word(rng, 1, static_cast<std::size_t>(budget.word_len));
    for (int n1 = 2; n1 <= max_n; ++n1)
      for (int n2 = 2; n2 <= max_n; ++n2) {
        PrefixConstraintSet cs;
        cs.add(Polarity::must_start_with, word_u(n2, t.rank()));
        cs.constraints.push_back(translate_cylinder(t, n1, true));
        if (!satisfiable(cs)) continue;  // the hypothesis t D_{n2} cap D_{n1} != {} fails
        ++rep.instances;
        const bool ends = ends_with(t, inv(word_u(n2, t.rank())));
        const bool starts = starts_with(t, word_u(n1, t.rank()));
        const bool double_u =
            n1 != n2 && t == mul(word_u(n1, t.rank()), inv(word_u(n2, t.rank())));
        if (!ends && !starts && !double_u)
          note_failure(rep, "t=" + format(t) + " n1=" + std::to_string(n1) +
                                " n2=" + std::to_string(n2));
      }
  }
  return rep;
}

namespace {

LemmaReport oracle_agreement(const LemmaBudget& budget, bool t_starts_with_un,
                             const std::string& name) {
  LemmaReport rep;
  rep.lemma = name;
  const int max_n = 6;
  Rng rng(budget.seed);
  for (std::uint64_t s = 0; s < budget.samples; ++s) {
    const int n = 2 + static_cast<int>(rng.below(max_n - 1));
    ReducedWord t;
    if (t_starts_with_un) {
      // u_n w with w not starting with b keeps the leading cylinder intact.
      ReducedWord w = random_word(rng, 0, static_cast<std::size_t>(budget.word_len));
      while (!w.empty() && w.front() == Letter{2, +1}) w = random_word(rng, 0, static_cast<std::size_t>(budget.word_len));
      t = mul(word_u(n, 2), w);
      if (!starts_with(t, word_u(n, 2))) {
        --s;
        continue;
      }
    } else {
      t = random_word(rng, 0, static_cast<std::size_t>(budget.word_len));
      if (starts_with(t, word_u(n, 2))) {
        --s;
        continue;
      }
    }
    const std::size_t ylen = t.size() + 2 * static_cast<std::size_t>(n) + 3 + rng.below(4);
    const ReducedWord y = random_word(rng, ylen, ylen);
    const Membership direct = member_prefix(y, t, n);
    if (direct == Membership::undetermined) continue;
    ++rep.instances;
    const PrefixConstraint c = translate_cylinder(t, n, true);
    const Membership translated = eval_constraint_on_prefix(c, y);
    const bool agree = (direct == Membership::in && translated == Membership::in) ||
                       (direct == Membership::out && translated == Membership::out);
    if (!agree)
      note_failure(rep, "t=" + format(t) + " n=" + std::to_string(n) + " y=" + format(y));
  }
  return rep;
}

}  // namespace

LemmaReport verify_lemma_free6(const LemmaBudget& budget, const ExecPolicy& pol) {
  (void)pol;
  return oracle_agreement(budget, false, "free6");
}

LemmaReport verify_lemma_free7(const LemmaBudget& budget, const ExecPolicy& pol) {
  (void)pol;
  return oracle_agreement(budget, true, "free7");
}

LemmaReport verify_lemma(const std::string& name, const IntegerTower* zt,
                         const QuotientTower<ReducedWord>* wt, const LemmaBudget& budget,
                         const ExecPolicy& pol) {
  auto pick_int = [&]() -> const IntegerTower& {
    if (!zt) throw std::invalid_argument("lemma '" + name + "' needs an integer tower");
    return *zt;
  };
  auto pick_word = [&]() -> const QuotientTower<ReducedWord>& {
    if (!wt) throw std::invalid_argument("lemma '" + name + "' needs a word tower");
    return *wt;
  };
  if (name == "rf1")
    return zt ? verify_lemma_rf1(pick_int(), budget.depth, pol)
              : verify_lemma_rf1(pick_word(), budget.depth, pol);
  if (name == "rf2")
    return zt ? verify_lemma_rf2(pick_int(), budget.depth, pol)
              : verify_lemma_rf2(pick_word(), budget.depth, pol);
  if (name == "free1")
    return wt ? verify_lemma_free1(pick_word(), budget.depth, pol)
              : verify_lemma_free1(pick_int(), budget.depth, pol);
  if (name == "free5")
    return wt ? verify_lemma_free5(pick_word(), budget.depth, pol)
              : verify_lemma_free5(pick_int(), budget.depth, pol);
  if (name == "free2") return verify_lemma_free2(budget, pol);
  if (name == "free6") return verify_lemma_free6(budget, pol);
  if (name == "free7") return verify_lemma_free7(budget, pol);
  throw std::invalid_argument("unknown lemma '" + name + "'");
}

template LemmaReport verify_lemma_rf1<long long>(const QuotientTower<long long>&, int,
                                                 const ExecPolicy&);
template LemmaReport verify_lemma_rf1<ReducedWord>(const QuotientTower<ReducedWord>&, int,
                                                   const ExecPolicy&);
template LemmaReport verify_lemma_rf2<long long>(const QuotientTower<long long>&, int,
                                                 const ExecPolicy&);
template LemmaReport verify_lemma_rf2<ReducedWord>(const QuotientTower<ReducedWord>&, int,
                                                   const ExecPolicy&);
template LemmaReport verify_lemma_free1<long long>(const QuotientTower<long long>&, int,
                                                   const ExecPolicy&);
template LemmaReport verify_lemma_free1<ReducedWord>(const QuotientTower<ReducedWord>&, int,
                                                     const ExecPolicy&);
template LemmaReport verify_lemma_free5<long long>(const QuotientTower<long long>&, int,
                                                   const ExecPolicy&);
template LemmaReport verify_lemma_free5<ReducedWord>(const QuotientTower<ReducedWord>&, int,
                                                     const ExecPolicy&);

}  // namespace findep
