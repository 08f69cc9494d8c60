#include "findep/search.hpp"

#include <algorithm>
#include <map>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace findep {

std::vector<long long> integer_ball(long long radius) {
  std::vector<long long> out;
  for (long long s = -radius; s <= radius; ++s) out.push_back(s);
  return out;
}

std::vector<ReducedWord> word_ball(int radius, std::uint8_t rank) {
  std::vector<ReducedWord> out{ReducedWord(rank)};
  std::size_t level_begin = 0;
  for (int len = 1; len <= radius; ++len) {
    const std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (std::uint8_t g = 1; g <= rank; ++g)
        for (std::int8_t sgn : {std::int8_t(+1), std::int8_t(-1)}) {
          Letter l{g, sgn};
          const ReducedWord& w = out[i];
          if (!w.empty() && w.back() == l.inverse()) continue;
          WordBuilder b(w);
          b.push(l);
          out.push_back(b.take());
        }
    }
    level_begin = level_end;
  }
  return out;
}

namespace {

template <class E>
bool check_indexed(const IndependenceEngine<E>& engine, const std::vector<E>& ball,
                   const std::vector<int>& idx) {
  std::vector<E> m;
  m.reserve(idx.size());
  for (int i : idx) m.push_back(ball[static_cast<std::size_t>(i)]);
  return engine.is_independence_set_serial(m).status == Verdict::Status::independent;
}

}  // namespace

template <class E>
SearchResult<E> search_max(const IndependenceEngine<E>& engine, const std::vector<E>& ball,
                           int size_cap, const SearchBudget& budget, const ExecPolicy& pol) {
  SearchResult<E> res;
  res.ball_size = ball.size();
  if (size_cap < 1) return res;

  int threads = 1;
#ifdef _OPENMP
  threads = pol.workers > 0 ? pol.workers : omp_get_max_threads();
#else
  (void)pol;
#endif

  // Level 1.
  std::vector<std::vector<int>> level;
  {
    std::vector<char> ok(ball.size(), 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(ball.size()); ++i)
      ok[static_cast<std::size_t>(i)] = check_indexed(engine, ball, {static_cast<int>(i)}) ? 1 : 0;
    res.independence_checks += ball.size();
    for (std::size_t i = 0; i < ball.size(); ++i)
      if (ok[i]) level.push_back({static_cast<int>(i)});
  }
  if (!level.empty()) res.max_size = 1;

  std::set<std::vector<int>> prev_set(level.begin(), level.end());

  for (int k = 1; k < size_cap && !level.empty(); ++k) {
    // Candidates: extend by a later ball element; all k-subsets must be
    // independent already (subset monotonicity).
    std::vector<std::pair<std::size_t, int>> cand;  // (index into level, new element)
    for (std::size_t si = 0; si < level.size(); ++si) {
      const auto& S = level[si];
      for (int j = S.back() + 1; j < static_cast<int>(ball.size()); ++j) {
        bool closed = true;
        std::vector<int> sub(S.begin(), S.end());
        sub.push_back(j);
        for (std::size_t drop = 0; drop + 1 < sub.size() && closed; ++drop) {
          std::vector<int> s2;
          for (std::size_t z = 0; z < sub.size(); ++z)
            if (z != drop) s2.push_back(sub[z]);
          if (!prev_set.count(s2)) closed = false;
        }
        if (closed)
          cand.emplace_back(si, j);
        else
          ++res.candidates_pruned;
      }
    }
    if (res.independence_checks + cand.size() > budget.max_checks) {
      res.budget_exhausted = true;
      break;
    }
    std::vector<char> ok(cand.size(), 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(cand.size()); ++c) {
      std::vector<int> idx = level[cand[static_cast<std::size_t>(c)].first];
      idx.push_back(cand[static_cast<std::size_t>(c)].second);
      ok[static_cast<std::size_t>(c)] = check_indexed(engine, ball, idx) ? 1 : 0;
    }
    res.independence_checks += cand.size();

    std::vector<std::vector<int>> next;
    std::vector<char> ext(level.size(), 0);
    for (std::size_t c = 0; c < cand.size(); ++c) {
      if (!ok[c]) continue;
      std::vector<int> idx = level[cand[c].first];
      idx.push_back(cand[c].second);
      // Every k-subset that produced this set is extendable; marking the
      // generating set suffices for maximality bookkeeping at this level.
      ext[cand[c].first] = 1;
      next.push_back(std::move(idx));
    }
    // Supersets also witness extendability of their other subsets.
    for (const auto& S : next) {
      for (std::size_t drop = 0; drop + 1 < S.size(); ++drop) {
        std::vector<int> s2;
        for (std::size_t z = 0; z < S.size(); ++z)
          if (z != drop) s2.push_back(S[z]);
        auto it = std::lower_bound(level.begin(), level.end(), s2);
        if (it != level.end() && *it == s2) ext[static_cast<std::size_t>(it - level.begin())] = 1;
      }
    }
    for (std::size_t si = 0; si < level.size(); ++si)
      if (!ext[si] && res.maximal_sets.size() < budget.max_report_sets) {
        std::vector<E> s;
        for (int i : level[si]) s.push_back(ball[static_cast<std::size_t>(i)]);
        res.maximal_sets.push_back(std::move(s));
      }
    if (!next.empty()) res.max_size = k + 1;
    prev_set = std::set<std::vector<int>>(next.begin(), next.end());
    level = std::move(next);
    if (k + 1 == size_cap && !level.empty()) res.size_cap_hit = size_cap;
  }
  // Whatever survives at the last level is maximal within the explored range.
  for (const auto& S : level) {
    if (res.maximal_sets.size() >= budget.max_report_sets) break;
    std::vector<E> s;
    for (int i : S) s.push_back(ball[static_cast<std::size_t>(i)]);
    res.maximal_sets.push_back(std::move(s));
  }
  return res;
}

template <class E>
SearchResult<E> search_max_bruteforce(const IndependenceEngine<E>& engine,
                                      const std::vector<E>& ball, int size_cap) {
  SearchResult<E> res;
  res.ball_size = ball.size();
  std::vector<int> idx;
  auto rec = [&](auto&& self, int from) -> void {
    if (!idx.empty()) {
      ++res.independence_checks;
      if (check_indexed(engine, ball, idx)) {
        if (static_cast<int>(idx.size()) > res.max_size) {
          res.max_size = static_cast<int>(idx.size());
          res.maximal_sets.clear();
        }
        if (static_cast<int>(idx.size()) == res.max_size) {
          std::vector<E> s;
          for (int i : idx) s.push_back(ball[static_cast<std::size_t>(i)]);
          res.maximal_sets.push_back(std::move(s));
        }
      } else {
        return;  // supersets cannot be independent either
      }
    }
    if (static_cast<int>(idx.size()) >= size_cap) return;
    for (int j = from; j < static_cast<int>(ball.size()); ++j) {
      idx.push_back(j);
      self(self, j + 1);
      idx.pop_back();
    }
  };
  rec(rec, 0);
  return res;
}

namespace {

// Cheap structural screen before running the full classifier on a pair.
bool shape_screen(const ReducedWord& t, PairType type) {
  const auto p = u_prefix_index(t);
  const auto s = u_suffix_index(t);
  switch (type) {
    case PairType::A1:
    case PairType::A2:
    case PairType::B1:
      return p && s;
    case PairType::C1:
      return p && s && *p != *s;
    case PairType::C2:
      return p && s && *p == *s;
    case PairType::B2:
      return p.has_value();
    case PairType::B4:
    case PairType::C3:
      return s.has_value();
    case PairType::B3: {
      std::size_t lead = 0;
      while (lead < t.size() && t[lead] == Letter{1, +1}) ++lead;
      std::size_t trail = 0;
      while (trail < t.size() && t[t.size() - 1 - trail] == Letter{1, -1}) ++trail;
      return lead >= 2 && trail >= 2 && lead != trail;
    }
  }
  return true;
}

}  // namespace

BoundExperimentResult bound_experiment(const IndependenceEngine<ReducedWord>& engine,
                                       PairType type, int radius, const BoundBudget& budget,
                                       const ExecPolicy& pol) {
  BoundExperimentResult res;
  res.type = type;
  res.bound_constant = type_bound_constant(type);
  const auto& tower = engine.tower();
  const int N = engine.depth();
  const std::vector<ReducedWord> ball = word_ball(radius, 2);

  // Any typed pair has t = s1 s2^-1 either in a marked class or in Gamma_2,
  // so at level 2 the coset of s1 is pinned to two candidates given s2.
  // Bucket the ball by level-2 coset to enumerate only those pairs.
  std::map<std::uint64_t, std::vector<std::size_t>> bucket;
  std::vector<CosetId> at2(ball.size());
  for (std::size_t i = 0; i < ball.size(); ++i) {
    at2[i] = tower.project(ball[i], 2);
    bucket[at2[i].id].push_back(i);
  }

  int threads = 1;
#ifdef _OPENMP
  threads = pol.workers > 0 ? pol.workers : omp_get_max_threads();
#else
  (void)pol;
#endif

  // Edge (i -> j) iff the ordered pair (ball[i], ball[j]) carries the type.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> found(
      static_cast<std::size_t>(threads));
  std::uint64_t pairs = 0;
  bool exhausted = false;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64) num_threads(threads) reduction(+ : pairs)
#endif
  for (std::int64_t j = 0; j < static_cast<std::int64_t>(ball.size()); ++j) {
#ifdef _OPENMP
    const std::size_t tid = static_cast<std::size_t>(omp_get_thread_num());
#else
    const std::size_t tid = 0;
#endif
    const CosetId s2c = at2[static_cast<std::size_t>(j)];
    for (int cls = 0; cls < 2; ++cls) {
      const CosetId target = cls == 0 ? tower.coset_mul(tower.marked_coset(2), s2c) : s2c;
      auto it = bucket.find(target.id);
      if (it == bucket.end()) continue;
      for (std::size_t i : it->second) {
        if (i == static_cast<std::size_t>(j)) continue;
        ++pairs;
        const ReducedWord t = mul(ball[i], inv(ball[static_cast<std::size_t>(j)]));
        if (t.empty() || !shape_screen(t, type)) continue;
        for (const PairTypeMatch& m :
             classify_pair_if_applicable(tower, ball[i], ball[static_cast<std::size_t>(j)], N)) {
          if (m.type == type && !m.transposed) {
            found[tid].emplace_back(i, static_cast<std::size_t>(j));
            break;
          }
        }
      }
    }
  }
  res.candidate_pairs = pairs;
  if (pairs > budget.max_pairs) exhausted = true;

  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (auto& f : found) edges.insert(edges.end(), f.begin(), f.end());
  std::sort(edges.begin(), edges.end());
  res.typed_edges = edges.size();

  // Adjacency: out-neighbors, for the ordered all-pairs condition.
  std::map<std::size_t, std::vector<std::size_t>> adj;
  std::set<std::size_t> verts;
  for (const auto& [a, b] : edges) {
    adj[a].push_back(b);
    verts.insert(a);
    verts.insert(b);
  }

  // DFS over listings s_1, ..., s_l with every earlier element pointing to
  // every later one; independence is subset-monotone, so it prunes.
  std::vector<std::size_t> seq;
  auto has_edge = [&](std::size_t a, std::size_t b) {
    auto it = adj.find(a);
    if (it == adj.end()) return false;
    return std::binary_search(it->second.begin(), it->second.end(), b);
  };
  for (auto& [v, nb] : adj) std::sort(nb.begin(), nb.end());

  auto record = [&](const std::vector<std::size_t>& s) {
    const int sz = static_cast<int>(s.size());
    if (sz > res.max_found) {
      res.max_found = sz;
      res.best_sets.clear();
    }
    if (sz == res.max_found && res.best_sets.size() < budget.max_report_sets) {
      std::vector<ReducedWord> ws;
      for (std::size_t i : s) ws.push_back(ball[i]);
      res.best_sets.push_back(std::move(ws));
    }
  };

  auto independent = [&](const std::vector<std::size_t>& s) {
    std::vector<ReducedWord> m;
    for (std::size_t i : s) m.push_back(ball[i]);
    ++res.independence_checks;
    return engine.is_independence_set_serial(m).status == Verdict::Status::independent;
  };

  auto rec = [&](auto&& self) -> void {
    if (res.independence_checks >= budget.max_checks) {
      exhausted = true;
      return;
    }
    record(seq);
    std::vector<std::size_t> exts;
    if (seq.empty()) {
      exts.assign(verts.begin(), verts.end());
    } else {
      for (std::size_t w : adj[seq.back()]) {
        bool all = w != seq.back();
        for (std::size_t v : seq)
          if (v == w || !has_edge(v, w)) {
            all = false;
            break;
          }
        if (all) exts.push_back(w);
      }
    }
    for (std::size_t w : exts) {
      seq.push_back(w);
      if (independent(seq)) self(self);
      seq.pop_back();
      if (exhausted) return;
    }
  };
  if (!verts.empty()) {
    // Start from singletons; the empty listing is not an independence set.
    for (std::size_t v : verts) {
      seq = {v};
      if (independent(seq)) rec(rec);
      if (exhausted) break;
    }
    seq.clear();
  }
  res.budget_exhausted = exhausted;
  res.below_bound = res.max_found < res.bound_constant;
  return res;
}

template SearchResult<long long> search_max<long long>(const IndependenceEngine<long long>&,
                                                       const std::vector<long long>&, int,
                                                       const SearchBudget&, const ExecPolicy&);
template SearchResult<ReducedWord> search_max<ReducedWord>(const IndependenceEngine<ReducedWord>&,
                                                           const std::vector<ReducedWord>&, int,
                                                           const SearchBudget&, const ExecPolicy&);
template SearchResult<long long> search_max_bruteforce<long long>(
    const IndependenceEngine<long long>&, const std::vector<long long>&, int);
template SearchResult<ReducedWord> search_max_bruteforce<ReducedWord>(
    const IndependenceEngine<ReducedWord>&, const std::vector<ReducedWord>&, int);

}  // namespace findep
