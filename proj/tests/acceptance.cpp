// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failures. Budgets are work counts, so reruns with the same seed are
// reproducible bit for bit.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "findep/classify.hpp"
#include "findep/lemmas.hpp"
#include "findep/ramsey.hpp"
#include "findep/report.hpp"
#include "findep/rng.hpp"
#include "findep/search.hpp"

using namespace findep;

namespace {

int failures = 0;

double now() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

void verdict(int criterion, bool pass, const std::string& detail, double seconds) {
  std::printf("[%s] criterion %d: %s (%.1f s)\n", pass ? "PASS" : "FAIL", criterion,
              detail.c_str(), seconds);
  std::fflush(stdout);
  if (!pass) ++failures;
}

// ---------------------------------------------------------------------------

void criterion1_word_algebra() {
  const double t0 = now();
  Rng rng(1001);
  std::uint64_t checks = 0, bad = 0;
  for (int i = 0; i < 100000; ++i) {
    const ReducedWord x = random_word(rng, 0, 30), y = random_word(rng, 0, 30),
                      z = random_word(rng, 0, 30);
    if (mul(mul(x, y), z) != mul(x, mul(y, z))) ++bad;
    if (!mul(x, inv(x)).empty()) ++bad;
    const ReducedWord p = mul(x, y);
    for (std::size_t k = 0; k + 1 < p.size(); ++k)
      if (p[k + 1] == p[k].inverse()) ++bad;
    if (mul(p, ReducedWord(2)) != p) ++bad;
    ++checks;
  }
  std::uint64_t decomposed = 0;
  auto middle = [&rng](bool no_b_start, bool no_binv_end, std::size_t lo, std::size_t hi) {
    for (;;) {
      ReducedWord v = random_word(rng, lo, hi);
      if (no_b_start && !v.empty() && v.front() == Letter{2, +1}) continue;
      if (no_binv_end && !v.empty() && v.back() == Letter{2, -1}) continue;
      return v;
    }
  };
  for (int i = 0; i < 10000; ++i) {
    ReducedWord t;
    switch (rng.below(4)) {
      case 0:
        t = mul(word_u(2 + rng.below(5)),
                mul(middle(true, true, 1, 8), inv(word_u(2 + rng.below(5)))));
        break;
      case 1: t = mul(word_u(2 + rng.below(5)), middle(true, false, 0, 10)); break;
      case 2: t = mul(middle(false, true, 0, 10), inv(word_u(2 + rng.below(5)))); break;
      default: t = random_word(rng, 0, 16); break;
    }
    for (const StructuralForm& f : decompose(t)) {
      ++decomposed;
      if (reassemble(f, t.rank()) != t) ++bad;
    }
  }
  verdict(1, bad == 0 && checks == 100000 && decomposed >= 10000,
          "word algebra: 100000 random triples, " + std::to_string(decomposed) +
              " decompose round-trips, " + std::to_string(bad) + " violations",
          now() - t0);
}

void criterion2_cylinder_oracle() {
  const double t0 = now();
  Rng rng(1002);
  std::uint64_t determined = 0, disagreements = 0;
  for (int i = 0; i < 100000; ++i) {
    const ReducedWord t = random_word(rng, 0, 12);
    const int n = 2 + static_cast<int>(rng.below(5));
    const std::size_t len = t.size() + 2 * static_cast<std::size_t>(n) + 3 + rng.below(6);
    const ReducedWord y = random_word(rng, len, len);
    const Membership direct = member_prefix(y, t, n);
    if (direct == Membership::undetermined) continue;
    ++determined;
    const Membership translated = eval_constraint_on_prefix(translate_cylinder(t, n, true), y);
    if (translated != direct) ++disagreements;
  }
  verdict(2, disagreements == 0 && determined == 100000,
          "cylinder translation vs direct oracle: " + std::to_string(determined) +
              "/100000 determined, " + std::to_string(disagreements) + " disagreements",
          now() - t0);
}

std::string criterion3_report(const SearchResult<long long>& res) {
  RunConfig cfg;
  cfg.tower = "integer";
  cfg.p = 3;
  cfg.q = 5;
  cfg.depth = 6;
  cfg.mode = "RF";
  cfg.radius = 40;
  cfg.seed = 42;
  ReportDoc doc;
  echo_config(doc, cfg, "search");
  doc.kv("radius", cfg.radius);
  report_search(doc, res, 6);
  return doc.str();
}

SearchResult<long long> run_criterion3_search(const IntegerTower& tower) {
  IntEngine engine(tower, Mode::RF, 6);
  return search_max(engine, integer_ball(40), 6);
}

void criterion3_rf_bound(const IntegerTower& tower, SearchResult<long long>* out) {
  const double t0 = now();
  const SearchResult<long long> res = run_criterion3_search(tower);
  *out = res;
  const bool exhaustive = !res.budget_exhausted;
  verdict(3, exhaustive && res.max_size <= 5,
          "integer tower ball 40 depth 6: exhaustive search, k* = " +
              std::to_string(res.max_size) + " <= 5, no size-6 independence set",
          now() - t0);
}

void criterion4_lemma_verifiers() {
  const double t0 = now();
  IntegerTower zt(3, 5, 3);
  SanovTower wt(3, 3);
  std::vector<LemmaReport> reps;
  reps.push_back(verify_lemma_rf1(zt, 3));
  reps.push_back(verify_lemma_rf2(zt, 3));
  reps.push_back(verify_lemma_free1(wt, 3));
  LemmaBudget budget;
  budget.depth = 3;
  budget.word_len = 14;
  budget.samples = 10000;
  budget.seed = 1004;
  reps.push_back(verify_lemma_free2(budget));
  reps.push_back(verify_lemma_free5(wt, 3));
  bool pass = true;
  std::string detail;
  for (const LemmaReport& r : reps) {
    if (!r.pass()) pass = false;
    detail += r.lemma + "=" + std::to_string(r.instances) + "/" +
              std::to_string(r.counterexamples) + " ";
  }
  verdict(4, pass, "lemma verifiers (instances/counterexamples): " + detail, now() - t0);
}

void criterion5_classifier() {
  const double t0 = now();
  SanovTower tower(3, 3);
  const int N = 3;

  // Every jointly positive pair in the radius-8 ball. The quotient t always
  // sits over the identity, the marked class, or its inverse at level 2, so
  // bucketing by that coset makes the scan exact and fast.
  const std::vector<ReducedWord> ball = word_ball(8);
  std::map<std::uint64_t, std::vector<std::size_t>> bucket;
  std::vector<CosetId> at2(ball.size());
  for (std::size_t i = 0; i < ball.size(); ++i) {
    at2[i] = tower.project(ball[i], 2);
    bucket[at2[i].id].push_back(i);
  }
  const CosetId marked2 = tower.marked_coset(2);
  const CosetId marked2inv = tower.coset_inv(marked2);
  std::vector<std::pair<std::size_t, std::size_t>> passing;
  for (std::size_t j = 0; j < ball.size(); ++j) {
    for (int cls = 0; cls < 3; ++cls) {
      const CosetId target = cls == 0   ? tower.coset_mul(marked2, at2[j])
                             : cls == 1 ? at2[j]
                                        : tower.coset_mul(marked2inv, at2[j]);
      auto it = bucket.find(target.id);
      if (it == bucket.end()) continue;
      for (std::size_t i : it->second) {
        if (i == j) continue;
        if (joint_positivity(tower, ball[i], ball[j], N)) passing.emplace_back(i, j);
      }
    }
  }
  std::sort(passing.begin(), passing.end());
  passing.erase(std::unique(passing.begin(), passing.end()), passing.end());

  // Sample 1000 of them deterministically.
  Rng rng(1005);
  std::vector<std::size_t> order(passing.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  const std::size_t n_samples = std::min<std::size_t>(1000, order.size());

  std::map<int, std::vector<CosetId>> blocks;
  for (int k2 = 2; k2 <= N; ++k2) {
    for (std::uint64_t i = 0; i < tower.index(N); ++i) {
      const CosetId c = tower.coset_at(N, i);
      if (tower.in_C(c, k2)) blocks[k2].push_back(c);
    }
  }

  std::uint64_t no_match = 0, predictions = 0, disagreements = 0;
  for (std::size_t s = 0; s < n_samples; ++s) {
    const auto& [i, j] = passing[order[s]];
    const auto matches = classify_pair(tower, ball[i], ball[j], N);
    if (matches.empty()) {
      ++no_match;
      continue;
    }
    for (const PairTypeMatch& m : matches) {
      for (int k2 = 2; k2 <= N; ++k2) {
        const Outcome claim = clause_outcomes(m, N)[static_cast<std::size_t>(k2 - 2)];
        for (int rep = 0; rep < 4; ++rep) {
          ReducedWord base = word_u(k2);
          if ((claim.cond.kind == YKind::starts || claim.cond.kind == YKind::not_starts) &&
              rep % 2 == 0)
            base = claim.cond.w;
          const std::size_t target =
              base.size() + m.t.size() + 2 * static_cast<std::size_t>(N) + 4;
          WordBuilder wb(base);
          while (wb.word().size() < target) {
            const std::uint64_t pick = rng.below(4);
            Letter l{static_cast<std::uint8_t>(pick / 2 + 1),
                     pick % 2 == 0 ? std::int8_t(+1) : std::int8_t(-1)};
            if (!wb.word().empty() && wb.word().back() == l.inverse()) continue;
            wb.push(l);
          }
          const ReducedWord eta = wb.take();
          PrefixConstraintSet info;
          info.add(Polarity::must_start_with, eta);
          const Prediction pred = predict_membership(m, k2, info, N);
          if (pred.kind == Prediction::Kind::needs_more_prefix) continue;
          const auto& bl = blocks[k2];
          const CosetId zeta = bl[rng.below(bl.size())];
          const DirectMembership direct = direct_membership(tower, m.t, eta, zeta, N);
          if (direct.m == Membership::undetermined) continue;
          ++predictions;
          const bool agree = pred.kind == Prediction::Kind::in_at
                                 ? (direct.m == Membership::in && direct.level == pred.level)
                                 : direct.m == Membership::out;
          if (!agree) ++disagreements;
        }
      }
    }
  }
  verdict(5, passing.size() >= 1000 && n_samples == 1000 && no_match == 0 && disagreements == 0,
          "classifier: " + std::to_string(passing.size()) + " jointly positive pairs, " +
              std::to_string(n_samples) + " sampled, " + std::to_string(no_match) +
              " without a match, " + std::to_string(predictions) +
              " determined predictions, " + std::to_string(disagreements) + " disagreements",
          now() - t0);
}

void criterion6_type_bounds() {
  const double t0 = now();
  SanovTower tower(3, 3);
  WordEngine engine(tower, Mode::FREE, 3);
  bool pass = true;
  std::string detail;
  for (PairType type : {PairType::A1, PairType::A2, PairType::B1, PairType::B2, PairType::B3,
                        PairType::B4, PairType::C1, PairType::C2, PairType::C3}) {
    const BoundExperimentResult res = bound_experiment(engine, type, 10);
    if (!res.below_bound || res.budget_exhausted) pass = false;
    detail += std::string(to_string(type)) + "=" + std::to_string(res.max_found) + "<" +
              std::to_string(res.bound_constant) + " ";
  }
  verdict(6, pass, "all-one-type bounds in radius 10: " + detail, now() - t0);
}

void criterion7_ramsey() {
  const double t0 = now();
  bool pass = ramsey_upper({3, 3}) == 6;
  for (long long c = 1; c <= 10; ++c)
    if (ramsey_upper({c}) != c) pass = false;
  Rng rng(1007);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t k = 1 + rng.below(4);
    std::vector<long long> c;
    for (std::size_t z = 0; z < k; ++z) c.push_back(1 + static_cast<long long>(rng.below(9)));
    const BigInt base = ramsey_upper(c);
    std::vector<long long> inc = c;
    inc[rng.below(k)] += 1;
    if (ramsey_upper(inc) < base) pass = false;
    std::vector<long long> perm = c;
    for (std::size_t z = perm.size(); z > 1; --z) std::swap(perm[z - 1], perm[rng.below(z)]);
    if (ramsey_upper(perm) != base) pass = false;
  }
  const BigInt final_bound =
      ramsey_upper({21, 21, 13, 13, 4, 4, 4, 4, 3, 3, 3, 3, 6, 6, 4, 4, 3, 3});
  const std::string digits = final_bound.str();
  pass = pass && digits.size() > 30;
  verdict(7, pass,
          "ramsey: R(3,3)=6, single color identity, 1000 monotonicity/symmetry tuples, "
          "18-argument bound = " +
              digits,
          now() - t0);
}

void criterion8_determinism(const IntegerTower& tower, const SearchResult<long long>& first) {
  const double t0 = now();
  const std::string rep1 = criterion3_report(first);
  const SearchResult<long long> second = run_criterion3_search(tower);
  const std::string rep2 = criterion3_report(second);
  verdict(8, !rep1.empty() && rep1 == rep2,
          "determinism: two depth-6 search reports are byte-identical (" +
              std::to_string(rep1.size()) + " bytes)",
          now() - t0);
}

}  // namespace

int main() {
  criterion1_word_algebra();
  criterion2_cylinder_oracle();
  IntegerTower tower36(3, 5, 6);
  SearchResult<long long> c3_result;
  criterion3_rf_bound(tower36, &c3_result);
  criterion4_lemma_verifiers();
  criterion5_classifier();
  criterion6_type_bounds();
  criterion7_ramsey();
  criterion8_determinism(tower36, c3_result);
  std::printf("%s (%d failing criteria)\n",
              failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED", failures);
  return failures;
}
