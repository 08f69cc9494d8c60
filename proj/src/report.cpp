#include "findep/report.hpp"

namespace findep {

void echo_config(ReportDoc& doc, const RunConfig& cfg, const std::string& command) {
  doc.kv("command", command);
  doc.kv("tower", cfg.tower);
  doc.kv("p", cfg.p);
  if (cfg.tower == "integer") doc.kv("q", cfg.q);
  doc.kv("depth", cfg.depth);
  doc.kv("mode", cfg.mode);
  doc.kv("seed", cfg.seed);
}

std::string render(const CosetId& c) {
  return std::to_string(c.level) + ":" + std::to_string(c.id);
}

std::string render(const WitnessPrefix& w) {
  std::string s = w.prefix.empty() ? "e" : format(w.prefix);
  s += " certified_depth=" + std::to_string(w.certified_depth);
  if (w.a_infinity_excluded) s += " excludes=a^oo";
  return s;
}

std::string render_pattern(const SignPattern& p) {
  std::string s;
  for (auto v : p.signs) s += v > 0 ? '+' : '-';
  return s;
}

std::string render(const PairTypeMatch& m) {
  std::string s = to_string(m.type);
  s += m.transposed ? " transposed" : " as-is";
  if (m.m) s += " m=" + std::to_string(m.m);
  if (m.n1) s += " n1=" + std::to_string(m.n1);
  if (m.n2) s += " n2=" + std::to_string(m.n2);
  s += " v=" + (m.v.empty() ? std::string("e") : format(m.v));
  s += " t=" + format(m.t);
  return s;
}

template <>
std::string render_element<long long>(const long long& e) {
  return std::to_string(e);
}

template <>
std::string render_element<ReducedWord>(const ReducedWord& e) {
  return e.empty() ? "e" : format(e);
}

template <class E>
void report_verdict(ReportDoc& doc, const std::vector<E>& M, const Verdict& v) {
  std::string set;
  for (std::size_t i = 0; i < M.size(); ++i) {
    if (i) set += ",";
    set += render_element(M[i]);
  }
  doc.kv("set", set);
  doc.kv("verdict", v.status == Verdict::Status::independent
                        ? "independent"
                        : "not-witnessed-up-to-" + std::to_string(v.depth));
  if (v.status == Verdict::Status::independent) {
    for (std::uint32_t mask = 0; mask < v.witnesses.size(); ++mask) {
      const PatternWitness& w = v.witnesses[mask];
      std::string levels;
      for (std::size_t i = 0; i < w.positive_levels.size(); ++i) {
        if (i) levels += ",";
        levels += std::to_string(w.positive_levels[i]);
      }
      doc.kv("witness " + render_pattern(SignPattern::from_mask(mask, M.size())),
             "y=" + render(w.y) + " z=" + render(w.z) +
                 (levels.empty() ? "" : " levels=" + levels));
    }
  } else {
    std::string failed;
    for (std::size_t i = 0; i < v.failed_patterns.size(); ++i) {
      if (i) failed += ",";
      failed += render_pattern(SignPattern::from_mask(v.failed_patterns[i], M.size()));
    }
    doc.kv("failed_patterns", failed);
  }
}

template <class E>
void report_search(ReportDoc& doc, const SearchResult<E>& r, int size_cap) {
  doc.kv("ball_size", r.ball_size);
  doc.kv("size_cap", size_cap);
  doc.kv("max_independence_set", r.max_size);
  doc.kv("independence_checks", r.independence_checks);
  doc.kv("candidates_pruned", r.candidates_pruned);
  doc.kv("budget_exhausted", r.budget_exhausted ? "yes" : "no");
  if (r.size_cap_hit) doc.kv("size_cap_hit", r.size_cap_hit);
  for (std::size_t i = 0; i < r.maximal_sets.size(); ++i) {
    std::string s;
    for (std::size_t j = 0; j < r.maximal_sets[i].size(); ++j) {
      if (j) s += ",";
      s += render_element(r.maximal_sets[i][j]);
    }
    doc.kv("maximal_set " + std::to_string(i), s);
  }
}

void report_lemma(ReportDoc& doc, const LemmaReport& r) {
  doc.kv("lemma", r.lemma);
  doc.kv("instances", r.instances);
  doc.kv("counterexamples", r.counterexamples);
  doc.kv("result", r.pass() ? "pass" : "FAIL");
  for (std::size_t i = 0; i < r.first_failures.size(); ++i)
    doc.kv("counterexample " + std::to_string(i), r.first_failures[i]);
}

void report_bounds(ReportDoc& doc, const BoundExperimentResult& r) {
  doc.kv("type", to_string(r.type));
  doc.kv("bound_constant", r.bound_constant);
  doc.kv("max_all_type_independence_set", r.max_found);
  doc.kv("below_bound", r.below_bound ? "yes" : "NO");
  doc.kv("candidate_pairs", r.candidate_pairs);
  doc.kv("typed_edges", r.typed_edges);
  doc.kv("independence_checks", r.independence_checks);
  doc.kv("budget_exhausted", r.budget_exhausted ? "yes" : "no");
  for (std::size_t i = 0; i < r.best_sets.size(); ++i) {
    std::string s;
    for (std::size_t j = 0; j < r.best_sets[i].size(); ++j) {
      if (j) s += ",";
      s += render_element(r.best_sets[i][j]);
    }
    doc.kv("best_set " + std::to_string(i), s);
  }
}

template void report_verdict<long long>(ReportDoc&, const std::vector<long long>&, const Verdict&);
template void report_verdict<ReducedWord>(ReportDoc&, const std::vector<ReducedWord>&,
                                          const Verdict&);
template void report_search<long long>(ReportDoc&, const SearchResult<long long>&, int);
template void report_search<ReducedWord>(ReportDoc&, const SearchResult<ReducedWord>&, int);

}  // namespace findep
