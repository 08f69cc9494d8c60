#include "findep/classify.hpp"

#include <algorithm>

namespace findep {

const char* to_string(PairType t) {
  switch (t) {
    case PairType::A1: return "A1";
    case PairType::A2: return "A2";
    case PairType::B1: return "B1";
    case PairType::B2: return "B2";
    case PairType::B3: return "B3";
    case PairType::B4: return "B4";
    case PairType::C1: return "C1";
    case PairType::C2: return "C2";
    case PairType::C3: return "C3";
  }
  return "?";
}

std::optional<PairType> pair_type_from_string(const std::string& s) {
  static const std::pair<const char*, PairType> table[] = {
      {"A1", PairType::A1}, {"A2", PairType::A2}, {"B1", PairType::B1},
      {"B2", PairType::B2}, {"B3", PairType::B3}, {"B4", PairType::B4},
      {"C1", PairType::C1}, {"C2", PairType::C2}, {"C3", PairType::C3}};
  for (const auto& [name, t] : table)
    if (s == name) return t;
  return std::nullopt;
}

int type_bound_constant(PairType t) {
  switch (t) {
    case PairType::A1: return 21;
    case PairType::A2: return 13;
    case PairType::B1: return 4;
    case PairType::B2: return 4;
    case PairType::B3: return 3;
    case PairType::B4: return 3;
    case PairType::C1: return 6;
    case PairType::C2: return 4;
    case PairType::C3: return 3;
  }
  return 0;
}

namespace {

// Normalizes a boundary condition against the ambient cylinder D_{k2}: a
// condition word that is a prefix of u_{k2} holds for every point of the
// block, an incompatible one for none. always/never pass through.
YCond normalize(YKind kind, ReducedWord xi, const ReducedWord& u_k2) {
  if (kind != YKind::starts && kind != YKind::not_starts) return {kind, {}};
  if (starts_with(u_k2, xi))
    return {kind == YKind::starts ? YKind::always : YKind::never, {}};
  if (!starts_with(xi, u_k2))
    return {kind == YKind::starts ? YKind::never : YKind::always, {}};
  return {kind, std::move(xi)};
}

// The boundary condition equivalent to "t . (point of D_j-target) lands in
// D_j", per the cylinder-translation calculus.
YCond raw_ycond(const ReducedWord& t, int j) {
  const ReducedWord uj = word_u(j, t.rank());
  if (starts_with(t, uj))
    return {YKind::not_starts, mul(inv(t), mul(uj, parse("b", t.rank())))};
  return {YKind::starts, mul(inv(t), uj)};
}

bool ycond_equal(const YCond& a, const YCond& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == YKind::starts || a.kind == YKind::not_starts) return a.w == b.w;
  return true;
}

}  // namespace

bool outcome_equal(const Outcome& a, const Outcome& b) {
  if (!ycond_equal(a.cond, b.cond)) return false;
  if (a.cond.kind == YKind::never || a.cond.kind == YKind::z_dependent) return true;
  return a.level == b.level;
}

TLevels t_levels(const QuotientTower<ReducedWord>& tower, const ReducedWord& t, int N) {
  TLevels out;
  const ReducedWord ti = inv(t);
  out.depth = 0;
  for (int n = 1; n <= N; ++n) {
    if (tower.project(t, n) == tower.identity_coset(n))
      out.depth = n;
    else
      break;
  }
  for (int n = 2; n <= N; ++n) {
    if (tower.project(t, n) == tower.marked_coset(n)) out.marked = n;
    if (tower.project(ti, n) == tower.marked_coset(n)) out.marked_inv = n;
  }
  return out;
}

std::vector<Outcome> exact_outcomes(const QuotientTower<ReducedWord>& tower, const ReducedWord& t,
                                    int N) {
  const TLevels tl = t_levels(tower, t, N);
  std::vector<Outcome> out;
  for (int k2 = 2; k2 <= N; ++k2) {
    const ReducedWord uk2 = word_u(k2, t.rank());
    Outcome o;
    // The z-side activates exactly one candidate block: the marked level of
    // t when it is shallower than k2, or k2 itself when t lies in Gamma_{k2}.
    std::optional<int> j;
    if (tl.marked && *tl.marked < k2)
      j = *tl.marked;
    else if (tl.depth >= k2)
      j = k2;
    if (j) {
      o.level = *j;
      o.cond = normalize(raw_ycond(t, *j).kind, raw_ycond(t, *j).w, uk2);
    }
    // Blocks below the working depth are reachable for some coset digits and
    // not others exactly when t^-1 sits in the marked class at k2.
    if (tl.marked_inv && *tl.marked_inv == k2) {
      for (int jj = k2 + 1; jj <= N; ++jj) {
        YCond c = raw_ycond(t, jj);
        if (normalize(c.kind, c.w, uk2).kind != YKind::never) {
          o.cond = {YKind::z_dependent, {}};
          break;
        }
      }
    }
    out.push_back(std::move(o));
  }
  return out;
}

std::vector<Outcome> clause_outcomes(const PairTypeMatch& match, int N) {
  const ReducedWord& t = match.t;
  std::vector<Outcome> out;
  for (int k2 = 2; k2 <= N; ++k2) {
    const ReducedWord uk2 = word_u(k2, t.rank());
    Outcome o;
    auto set = [&](int level, YKind kind, ReducedWord w) {
      o.level = level;
      o.cond = normalize(kind, std::move(w), uk2);
    };
    auto starts_xi = [&](int level_of_u) { return mul(inv(t), word_u(level_of_u, t.rank())); };
    auto notstarts_xi = [&](int level_of_u) {
      return mul(inv(t), mul(word_u(level_of_u, t.rank()), parse("b", t.rank())));
    };
    switch (match.type) {
      case PairType::A1:
        if (k2 == match.m) set(match.m, YKind::always, {});
        else if (k2 == match.n2) set(match.n1, YKind::starts, starts_xi(match.n1));
        break;
      case PairType::A2:
        if (k2 == match.m) set(match.m, YKind::starts, starts_xi(match.m));
        else if (k2 > match.n1) set(match.n1, YKind::always, {});
        break;
      case PairType::B1:
        if (k2 > match.n1) set(match.n1, YKind::not_starts, notstarts_xi(match.n1));
        break;
      case PairType::B2:
        if (k2 > match.n1) set(match.n1, YKind::not_starts, notstarts_xi(match.n1));
        break;
      case PairType::B3:
        if (k2 == match.n2) set(match.n1, YKind::always, {});
        break;
      case PairType::B4:
        if (k2 == match.n2) set(match.n1, YKind::starts, starts_xi(match.n1));
        break;
      case PairType::C1:
        if (k2 == match.n1) set(match.n1, YKind::always, {});
        else if (k2 == match.n2) set(match.n2, YKind::starts, starts_xi(match.n2));
        break;
      case PairType::C2:
        if (k2 == match.m) set(match.m, YKind::not_starts, notstarts_xi(match.m));
        break;
      case PairType::C3:
        if (k2 == match.m) set(match.m, YKind::starts, starts_xi(match.m));
        break;
    }
    out.push_back(std::move(o));
  }
  return out;
}

bool joint_positivity(const QuotientTower<ReducedWord>& tower, const ReducedWord& s1,
                      const ReducedWord& s2, int N) {
  const ReducedWord t = mul(s1, inv(s2));
  if (t.empty()) throw std::invalid_argument("joint positivity needs distinct elements");
  for (const Outcome& o : exact_outcomes(tower, t, N))
    if (o.cond.kind != YKind::never) return true;
  return false;
}

std::vector<ReducedWord> live_words(const QuotientTower<ReducedWord>& tower, int N,
                                    int tail_radius) {
  std::vector<ReducedWord> tails{ReducedWord(2)};
  {
    std::size_t begin = 0;
    for (int len = 1; len <= tail_radius; ++len) {
      const std::size_t end = tails.size();
      for (std::size_t i = begin; i < end; ++i)
        for (std::uint8_t g = 1; g <= 2; ++g)
          for (std::int8_t sgn : {std::int8_t(+1), std::int8_t(-1)}) {
            Letter l{g, sgn};
            if (!tails[i].empty() && tails[i].back() == l.inverse()) continue;
            WordBuilder b(tails[i]);
            b.push(l);
            tails.push_back(b.take());
          }
      begin = end;
    }
  }
  auto is_live = [&](const ReducedWord& t) {
    if (t.empty()) return false;
    for (const Outcome& o : exact_outcomes(tower, t, N))
      if (o.cond.kind != YKind::never) return true;
    return false;
  };
  std::vector<ReducedWord> out;
  auto consider = [&](const ReducedWord& t) {
    if (is_live(t)) out.push_back(t);
  };
  for (int n = 2; n <= N; ++n) {
    const ReducedWord un = word_u(n, 2);
    for (const ReducedWord& v : tails) {
      consider(mul(un, v));        // leading-cylinder family
      consider(mul(v, inv(un)));   // trailing-cylinder family
      for (int n2 = 2; n2 <= N; ++n2)
        if (n2 != n) consider(mul(un, mul(v, inv(word_u(n2, 2)))));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

void gen_candidates(const QuotientTower<ReducedWord>& tower, const ReducedWord& t, int N,
                    bool transposed, std::vector<PairTypeMatch>& out) {
  const TLevels tl = t_levels(tower, t, N);
  auto push = [&](PairType type, int m, int n1, int n2, ReducedWord v) {
    PairTypeMatch pm;
    pm.type = type;
    pm.transposed = transposed;
    pm.m = m;
    pm.n1 = n1;
    pm.n2 = n2;
    pm.v = std::move(v);
    pm.t = t;
    out.push_back(std::move(pm));
  };
  for (const StructuralForm& f : decompose(t)) {
    switch (f.family) {
      case ShapeFamily::prefix_suffix: {
        const int P = f.prefix_index, S = f.suffix_index;
        if (tl.marked && P < *tl.marked && *tl.marked < S)
          push(PairType::A1, P, *tl.marked, S, f.middle);
        if (tl.marked && *tl.marked == P && S < P) push(PairType::A2, S, P, 0, f.middle);
        if (tl.marked && *tl.marked == P && P < S) push(PairType::B1, S, P, 0, f.middle);
        if (P != S && tl.depth >= std::min(N, std::max(P, S)))
          push(PairType::C1, 0, P, S, f.middle);
        if (P == S && tl.depth >= std::min(N, P)) push(PairType::C2, P, 0, 0, f.middle);
        break;
      }
      case ShapeFamily::prefix_only: {
        const int P = f.prefix_index;
        if (tl.marked && *tl.marked == P) {
          auto sv = u_suffix_index(f.middle);
          if (!sv || *sv <= P) push(PairType::B2, 0, P, 0, f.middle);
        }
        break;
      }
      case ShapeFamily::suffix_only: {
        const int S = f.suffix_index;
        if (tl.marked && *tl.marked < S && !starts_with(t, word_u(*tl.marked, t.rank())))
          push(PairType::B4, 0, *tl.marked, S, f.middle);
        if (tl.depth >= std::min(N, S) && !starts_with(t, word_u(S, t.rank())))
          push(PairType::C3, S, 0, 0, f.middle);
        break;
      }
      case ShapeFamily::double_u: {
        if (f.prefix_index < f.suffix_index && tl.marked && *tl.marked == f.prefix_index)
          push(PairType::B3, 0, f.prefix_index, f.suffix_index, ReducedWord(t.rank()));
        break;
      }
    }
  }
}

}  // namespace

std::vector<PairTypeMatch> classify_pair_if_applicable(const QuotientTower<ReducedWord>& tower,
                                                       const ReducedWord& s1,
                                                       const ReducedWord& s2, int N) {
  const ReducedWord t = mul(s1, inv(s2));
  if (t.empty()) throw std::invalid_argument("classify_pair needs s1 != s2");
  std::vector<PairTypeMatch> matches;
  bool live = false;
  for (int orient = 0; orient < 2; ++orient) {
    const ReducedWord to = orient == 0 ? t : inv(t);
    const auto exact = exact_outcomes(tower, to, N);
    for (const Outcome& o : exact)
      if (o.cond.kind != YKind::never) live = true;
    std::vector<PairTypeMatch> cands;
    gen_candidates(tower, to, N, orient == 1, cands);
    for (auto& c : cands) {
      const auto claimed = clause_outcomes(c, N);
      bool ok = true;
      for (std::size_t i = 0; i < claimed.size(); ++i)
        if (!outcome_equal(claimed[i], exact[i])) {
          ok = false;
          break;
        }
      if (ok) matches.push_back(std::move(c));
    }
  }
  if (!live) return {};
  std::sort(matches.begin(), matches.end(), [](const PairTypeMatch& a, const PairTypeMatch& b) {
    if (a.type != b.type) return static_cast<int>(a.type) < static_cast<int>(b.type);
    if (a.transposed != b.transposed) return !a.transposed;
    if (a.m != b.m) return a.m < b.m;
    if (a.n1 != b.n1) return a.n1 < b.n1;
    return a.n2 < b.n2;
  });
  return matches;
}

std::vector<PairTypeMatch> classify_pair(const QuotientTower<ReducedWord>& tower,
                                         const ReducedWord& s1, const ReducedWord& s2, int N) {
  if (!joint_positivity(tower, s1, s2, N))
    throw std::invalid_argument("classification inapplicable: the pair never lands jointly positive");
  return classify_pair_if_applicable(tower, s1, s2, N);
}

Prediction predict_membership(const PairTypeMatch& match, int k2,
                              const PrefixConstraintSet& y_info, int N) {
  if (k2 < 2 || k2 > N) throw std::invalid_argument("block level out of range");
  const Outcome o = clause_outcomes(match, N)[static_cast<std::size_t>(k2 - 2)];
  switch (o.cond.kind) {
    case YKind::never: return {Prediction::Kind::not_in, 0};
    case YKind::always: return {Prediction::Kind::in_at, o.level};
    case YKind::z_dependent: return {Prediction::Kind::needs_more_prefix, 0};
    default: break;
  }
  // Decide "boundary point starts with xi" from the partial information,
  // with membership in D_{k2} assumed.
  const ReducedWord& xi = o.cond.w;
  ReducedWord known = word_u(k2, match.t.rank());
  for (const auto& c : y_info.constraints) {
    if (c.polarity != Polarity::must_start_with) continue;
    if (c.word.size() > known.size()) {
      if (!prefix_compatible(c.word, known))
        throw std::invalid_argument("y_info contradicts membership in the stated block");
      known = c.word;
    } else if (!starts_with(known, c.word)) {
      throw std::invalid_argument("y_info contradicts membership in the stated block");
    }
  }
  Membership starts;
  if (known.size() >= xi.size())
    starts = starts_with(known, xi) ? Membership::in : Membership::out;
  else
    starts = starts_with(xi, known) ? Membership::undetermined : Membership::out;
  if (starts == Membership::undetermined) {
    // A negative constraint word that prefixes xi rules the cylinder out.
    for (const auto& c : y_info.constraints)
      if (c.polarity == Polarity::must_not_start_with && starts_with(xi, c.word))
        starts = Membership::out;
  }
  const bool want = o.cond.kind == YKind::starts;
  switch (starts) {
    case Membership::undetermined: return {Prediction::Kind::needs_more_prefix, 0};
    case Membership::in: return want ? Prediction{Prediction::Kind::in_at, o.level}
                                     : Prediction{Prediction::Kind::not_in, 0};
    case Membership::out: return want ? Prediction{Prediction::Kind::not_in, 0}
                                      : Prediction{Prediction::Kind::in_at, o.level};
  }
  return {Prediction::Kind::not_in, 0};
}

DirectMembership direct_membership(const QuotientTower<ReducedWord>& tower, const ReducedWord& t,
                                   const ReducedWord& eta_prefix, const CosetId& zeta, int N) {
  const CosetId moved = tower.act(t, zeta);
  bool any_undetermined = false;
  for (int j = 2; j <= N; ++j) {
    Membership y = member_prefix(eta_prefix, t, j);
    if (y == Membership::out) continue;
    bool z = tower.in_C(moved, j);
    if (!z) continue;
    if (y == Membership::in) return {Membership::in, j};
    any_undetermined = true;
  }
  return {any_undetermined ? Membership::undetermined : Membership::out, 0};
}

}  // namespace findep
