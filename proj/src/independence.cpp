#include "findep/independence.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace findep {

namespace {

// Merge a coset class with a further coset constraint; nullopt = incompatible.
template <class E>
std::optional<CosetId> merge(const QuotientTower<E>& t, const CosetId& a, const CosetId& b) {
  const CosetId &shallow = a.level <= b.level ? a : b, &deep = a.level <= b.level ? b : a;
  if (t.reduce(deep, shallow.level) != shallow) return std::nullopt;
  return deep;
}

}  // namespace

template <class E>
IndependenceEngine<E>::IndependenceEngine(const QuotientTower<E>& tower, Mode mode, int depth,
                                          std::vector<GenericBlock> generic_blocks)
    : tower_(&tower), mode_(mode), depth_(depth), generic_(std::move(generic_blocks)) {
  if (depth < 2 || depth > tower.max_depth())
    throw std::invalid_argument("depth must lie in [2, tower max_depth]");
  if constexpr (!std::is_same_v<E, ReducedWord>) {
    if (mode_ != Mode::RF)
      throw std::invalid_argument("boundary modes require a word tower");
  }
  if (mode_ == Mode::GENERIC) {
    if (generic_.empty()) throw std::invalid_argument("GENERIC mode needs blocks");
    for (const auto& b : generic_) {
      if (b.coset.level < 1 || b.coset.level > depth_)
        throw std::invalid_argument("generic block coset level out of range");
    }
    // Blocks must be pairwise disjoint at the coset level.
    for (std::size_t i = 0; i < generic_.size(); ++i)
      for (std::size_t j = i + 1; j < generic_.size(); ++j) {
        auto m = merge(tower, generic_[i].coset, generic_[j].coset);
        if (m) throw std::invalid_argument("generic blocks overlap at the coset level");
      }
  } else {
    // Marked cosets at distinct levels must never coincide under reduction.
    for (int m = 2; m <= depth_; ++m)
      for (int n = m + 1; n <= depth_; ++n)
        if (tower.reduce(tower.marked_coset(n), m) == tower.marked_coset(m))
          throw std::invalid_argument("tower has colliding marked cosets");
  }
}

template <class E>
std::optional<PatternWitness> IndependenceEngine<E>::try_leaf(
    const std::vector<E>& M, const SignPattern& omega, const std::vector<std::size_t>& pos,
    const std::vector<int>& levels, const CosetId& cls) const {
  const auto& t = *tower_;

  // Negative elements: a forbidden coset fully containing the class forces a
  // boundary condition (or kills the branch in RF mode); a merely compatible
  // one is dodged by the digit-wise extension below.
  struct Forced {
    std::size_t elem;
    int level;
  };
  std::vector<Forced> forced;
  std::vector<CosetId> avoid;
  for (std::size_t i = 0; i < M.size(); ++i) {
    if (omega.signs[i] > 0) continue;
    for (int n = 2; n <= depth_; ++n) {
      if (mode_ == Mode::GENERIC) continue;
      CosetId f = t.project(t.compose(t.inverse(M[i]), t.gamma(n)), n);
      if (n <= cls.level) {
        if (t.reduce(cls, n) == f) {
          if (mode_ == Mode::RF) return std::nullopt;
          forced.push_back({i, n});
        }
      } else if (t.reduce(f, cls.level) == cls) {
        avoid.push_back(f);
      }
    }
    if (mode_ == Mode::GENERIC) {
      for (const auto& b : generic_) {
        CosetId f = t.act(t.inverse(M[i]), b.coset);
        if (f.level <= cls.level) {
          if (t.reduce(cls, f.level) == f) forced.push_back({i, int(&b - generic_.data())});
        } else if (t.reduce(f, cls.level) == cls) {
          avoid.push_back(f);
        }
      }
    }
  }

  // Extend the class to the working depth, avoiding the compatible forbidden
  // cosets level by level. Index jumps exceed |M|, so a choice always exists.
  CosetId z = cls;
  while (z.level < depth_) {
    bool placed = false;
    for (const CosetId& child : t.children(z)) {
      bool bad = false;
      for (const CosetId& f : avoid)
        if (f.level == child.level && f == child) {
          bad = true;
          break;
        }
      if (!bad) {
        z = child;
        placed = true;
        break;
      }
    }
    if (!placed) return std::nullopt;  // cannot happen while jumps > |M|
  }

  PatternWitness w;
  w.z = z;
  for (std::size_t k = 0; k < pos.size(); ++k) w.positive_levels.push_back(levels[k]);

  if (mode_ == Mode::RF) {
    w.y.prefix = ReducedWord(2);
    w.y.certified_depth = 0;
    return w;
  }

  if constexpr (std::is_same_v<E, ReducedWord>) {
    if (mode_ == Mode::FREE) {
      PrefixConstraintSet cs;
      cs.exclude_a_infinity = true;
      for (std::size_t k = 0; k < pos.size(); ++k)
        cs.constraints.push_back(translate_cylinder(M[pos[k]], levels[k], true));
      for (const Forced& f : forced)
        cs.constraints.push_back(translate_cylinder(M[f.elem], f.level, false));
      auto y = satisfiable(cs);
      if (!y) return std::nullopt;
      // Lengthen the certificate until every s * y membership at levels up to
      // the working depth is decided by the prefix alone; re-validation can
      // then use the direct oracle without seeing the constraint set.
      std::size_t target = y->prefix.size();
      for (const E& s : M)
        target = std::max(target, s.size() + 2 * static_cast<std::size_t>(depth_) + 3);
      auto longer = extend_witness(cs, y->prefix, target);
      if (!longer) return std::nullopt;
      w.y.prefix = *longer;
      w.y.certified_depth = static_cast<int>(longer->size());
      w.y.a_infinity_excluded = cs.exclude_a_infinity;
      return w;
    }
    // GENERIC: positive blocks contribute translated atoms; forced negative
    // blocks contribute one clause of negated atoms each.
    std::vector<GeneralAtom> must;
    std::vector<GeneralClause> clauses;
    std::uint8_t rank = M.front().rank();
    for (std::size_t k = 0; k < pos.size(); ++k) {
      const auto& b = generic_[static_cast<std::size_t>(levels[k])];
      for (const auto& c : b.cs.constraints) must.push_back({M[pos[k]], c.polarity, c.word});
    }
    for (const Forced& f : forced) {
      const auto& b = generic_[static_cast<std::size_t>(f.level)];
      GeneralClause cl;
      for (const auto& c : b.cs.constraints) {
        Polarity flipped = c.polarity == Polarity::must_start_with
                               ? Polarity::must_not_start_with
                               : Polarity::must_start_with;
        cl.any_of.push_back({M[f.elem], flipped, c.word});
      }
      if (cl.any_of.empty()) return std::nullopt;  // forced into an unconditioned block
      clauses.push_back(std::move(cl));
    }
    auto y = satisfiable_general(must, clauses, rank);
    if (!y) return std::nullopt;
    w.y = *y;
    return w;
  }
  return std::nullopt;
}

template <class E>
void IndependenceEngine<E>::check_set_preconditions(const std::vector<E>& M) const {
  if (M.empty()) throw std::invalid_argument("M must be nonempty");
  for (std::size_t i = 0; i < M.size(); ++i)
    for (std::size_t j = i + 1; j < M.size(); ++j)
      if (M[i] == M[j]) throw std::invalid_argument("M has duplicate elements");
  std::size_t forbidden_per_level = M.size();
  if (mode_ == Mode::GENERIC) {
    std::vector<std::size_t> per_level(static_cast<std::size_t>(depth_) + 1, 0);
    for (const auto& b : generic_) ++per_level[static_cast<std::size_t>(b.coset.level)];
    std::size_t m = 0;
    for (std::size_t c : per_level) m = std::max(m, c);
    forbidden_per_level = M.size() * std::max<std::size_t>(1, m);
  }
  if (tower_->index_jump_lower_bound() <= forbidden_per_level)
    throw std::invalid_argument("tower index jumps must exceed the forbidden-coset count for depth-" +
                                std::to_string(depth_) + " witnesses to extend");
}

template <class E>
std::optional<PatternWitness> IndependenceEngine<E>::check_pattern(const std::vector<E>& M,
                                                                   const SignPattern& omega) const {
  check_set_preconditions(M);
  if (omega.signs.size() != M.size()) throw std::invalid_argument("pattern size mismatch");

  std::vector<std::size_t> pos;
  for (std::size_t i = 0; i < M.size(); ++i)
    if (omega.signs[i] > 0) pos.push_back(i);

  const auto& t = *tower_;
  const int n_choices = mode_ == Mode::GENERIC ? static_cast<int>(generic_.size()) : depth_ - 1;

  // Depth-first over level assignments for the positive elements, pruning by
  // coset-class compatibility; deterministic order (element order, then
  // ascending level).
  std::vector<int> levels(pos.size(), 0);
  std::optional<PatternWitness> found;
  auto rec = [&](auto&& self, std::size_t k, const CosetId& cls) -> bool {
    if (k == pos.size()) {
      found = try_leaf(M, omega, pos, levels, cls);
      return found.has_value();
    }
    for (int c = 0; c < n_choices; ++c) {
      CosetId k_coset;
      int level_label;
      if (mode_ == Mode::GENERIC) {
        k_coset = t.act(t.inverse(M[pos[k]]), generic_[static_cast<std::size_t>(c)].coset);
        level_label = c;
      } else {
        int n = 2 + c;
        k_coset = t.project(t.compose(t.inverse(M[pos[k]]), t.gamma(n)), n);
        level_label = n;
      }
      auto merged = merge(t, cls, k_coset);
      if (!merged) continue;
      levels[k] = level_label;
      if (self(self, k + 1, *merged)) return true;
    }
    return false;
  };
  rec(rec, 0, t.identity_coset(0));
  return found;
}

template <class E>
Verdict IndependenceEngine<E>::combine(const std::vector<E>& M,
                                       std::vector<std::optional<PatternWitness>>&& per) const {
  Verdict v;
  v.depth = depth_;
  v.status = Verdict::Status::independent;
  for (std::uint32_t mask = 0; mask < per.size(); ++mask) {
    if (!per[mask]) {
      v.status = Verdict::Status::not_witnessed;
      v.failed_patterns.push_back(mask);
    }
  }
  if (v.status == Verdict::Status::independent) {
    v.witnesses.reserve(per.size());
    for (auto& w : per) v.witnesses.push_back(std::move(*w));
  }
  (void)M;
  return v;
}

template <class E>
Verdict IndependenceEngine<E>::is_independence_set(const std::vector<E>& M,
                                                   const ExecPolicy& pol) const {
  check_set_preconditions(M);
  if (M.size() > 20) throw std::invalid_argument("pattern space too large");
  const std::uint32_t n_patterns = 1u << M.size();
  std::vector<std::optional<PatternWitness>> per(n_patterns);
#ifdef _OPENMP
  int threads = pol.workers > 0 ? pol.workers : omp_get_max_threads();
  std::exception_ptr failure = nullptr;
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::int64_t mask = 0; mask < static_cast<std::int64_t>(n_patterns); ++mask) {
    try {
      per[static_cast<std::size_t>(mask)] =
          check_pattern(M, SignPattern::from_mask(static_cast<std::uint32_t>(mask), M.size()));
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
#else
  (void)pol;
  for (std::uint32_t mask = 0; mask < n_patterns; ++mask)
    per[mask] = check_pattern(M, SignPattern::from_mask(mask, M.size()));
#endif
  return combine(M, std::move(per));
}

template <class E>
Verdict IndependenceEngine<E>::is_independence_set_serial(const std::vector<E>& M) const {
  check_set_preconditions(M);
  if (M.size() > 20) throw std::invalid_argument("pattern space too large");
  const std::uint32_t n_patterns = 1u << M.size();
  std::vector<std::optional<PatternWitness>> per(n_patterns);
  for (std::uint32_t mask = 0; mask < n_patterns; ++mask)
    per[mask] = check_pattern(M, SignPattern::from_mask(mask, M.size()));
  return combine(M, std::move(per));
}

template <class E>
bool IndependenceEngine<E>::validate(const std::vector<E>& M, const SignPattern& omega,
                                     const PatternWitness& w) const {
  const auto& t = *tower_;
  if (w.z.level != depth_) return false;
  std::size_t kpos = 0;
  for (std::size_t i = 0; i < M.size(); ++i) {
    CosetId sz = t.act(M[i], w.z);
    if (omega.signs[i] > 0) {
      if (mode_ == Mode::GENERIC) {
        if (kpos >= w.positive_levels.size()) return false;
        const auto& b = generic_[static_cast<std::size_t>(w.positive_levels[kpos++])];
        if (t.reduce(sz, b.coset.level) != b.coset) return false;
        if constexpr (std::is_same_v<E, ReducedWord>) {
          for (const auto& c : b.cs.constraints) {
            ReducedWord sy = mul(M[i], w.y.prefix);
            if (eval_constraint_on_prefix(c, sy) != Membership::in) return false;
          }
        }
      } else {
        if (kpos >= w.positive_levels.size()) return false;
        int n = w.positive_levels[kpos++];
        if (n < 2 || n > depth_) return false;
        if (!t.in_C(sz, n)) return false;
        if constexpr (std::is_same_v<E, ReducedWord>) {
          if (mode_ == Mode::FREE) {
            if (member_prefix(w.y.prefix, M[i], n) != Membership::in) return false;
          }
        }
      }
    } else {
      if (mode_ == Mode::GENERIC) {
        for (const auto& b : generic_) {
          bool coset_in = t.reduce(sz, b.coset.level) == b.coset;
          if (!coset_in) continue;
          if constexpr (std::is_same_v<E, ReducedWord>) {
            bool all_in = true;
            for (const auto& c : b.cs.constraints) {
              ReducedWord sy = mul(M[i], w.y.prefix);
              if (eval_constraint_on_prefix(c, sy) != Membership::in) all_in = false;
            }
            if (all_in) return false;
          } else {
            return false;
          }
        }
      } else {
        for (int n = 2; n <= depth_; ++n) {
          if (!t.in_C(sz, n)) continue;
          if (mode_ == Mode::RF) return false;
          if constexpr (std::is_same_v<E, ReducedWord>) {
            if (member_prefix(w.y.prefix, M[i], n) != Membership::out) return false;
          }
        }
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// General boundary satisfiability (atoms on translated points).

namespace {

Membership eval_atom(const GeneralAtom& a, const ReducedWord& prefix) {
  std::size_t j = 0;
  while (j < a.g.size() && j < prefix.size() && a.g[a.g.size() - 1 - j] == prefix[j].inverse()) ++j;
  Membership starts;
  if (j == prefix.size()) {
    starts = Membership::undetermined;
  } else {
    ReducedWord v = mul(a.g, prefix);
    if (v.size() >= a.w.size())
      starts = starts_with(v, a.w) ? Membership::in : Membership::out;
    else
      starts = starts_with(a.w, v) ? Membership::undetermined : Membership::out;
  }
  if (a.pol == Polarity::must_start_with) return starts;
  switch (starts) {
    case Membership::in: return Membership::out;
    case Membership::out: return Membership::in;
    default: return Membership::undetermined;
  }
}

struct GeneralSearch {
  const std::vector<GeneralAtom>& must;
  const std::vector<GeneralClause>& clauses;
  std::size_t target;
  std::uint64_t budget;
  std::uint64_t used = 0;

  bool run(ReducedWord& cur, ReducedWord* out) {
    if (++used > budget) throw BudgetExceeded("boundary satisfiability budget exhausted");
    for (const auto& a : must)
      if (eval_atom(a, cur) == Membership::out) return false;
    for (const auto& cl : clauses) {
      bool possible = false;
      for (const auto& a : cl.any_of)
        if (eval_atom(a, cur) != Membership::out) {
          possible = true;
          break;
        }
      if (!possible) return false;
    }
    if (cur.size() >= target) {
      // At this length every atom is determined; accept iff all hold.
      for (const auto& a : must)
        if (eval_atom(a, cur) != Membership::in) return false;
      for (const auto& cl : clauses) {
        bool sat = false;
        for (const auto& a : cl.any_of)
          if (eval_atom(a, cur) == Membership::in) {
            sat = true;
            break;
          }
        if (!sat) return false;
      }
      *out = cur;
      return true;
    }
    const std::uint8_t r = cur.rank();
    for (std::uint8_t g = 1; g <= r; ++g)
      for (std::int8_t s : {std::int8_t(+1), std::int8_t(-1)}) {
        Letter l{g, s};
        if (!cur.empty() && cur.back() == l.inverse()) continue;
        WordBuilder b(cur);
        b.push(l);
        ReducedWord next = b.take();
        if (run(next, out)) return true;
      }
    return false;
  }
};

}  // namespace

std::optional<WitnessPrefix> satisfiable_general(const std::vector<GeneralAtom>& must,
                                                 const std::vector<GeneralClause>& clauses,
                                                 std::uint8_t rank, std::uint64_t node_budget) {
  std::size_t target = 1;
  for (const auto& a : must) target = std::max(target, a.g.size() + a.w.size() + 1);
  for (const auto& cl : clauses)
    for (const auto& a : cl.any_of) target = std::max(target, a.g.size() + a.w.size() + 1);
  GeneralSearch gs{must, clauses, target, node_budget};
  ReducedWord cur(rank), out(rank);
  if (!gs.run(cur, &out)) return std::nullopt;
  WitnessPrefix w;
  w.prefix = out;
  w.certified_depth = static_cast<int>(out.size());
  return w;
}

template class IndependenceEngine<long long>;
template class IndependenceEngine<ReducedWord>;

}  // namespace findep
