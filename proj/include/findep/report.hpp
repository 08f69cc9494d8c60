#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "findep/classify.hpp"
#include "findep/independence.hpp"
#include "findep/lemmas.hpp"
#include "findep/search.hpp"

namespace findep {

/// Everything a run needs; mirrored by the CLI flags and config file.
struct RunConfig {
  std::string tower = "integer";  // "integer" | "sanov"
  long long p = 3;
  long long q = 5;
  int max_depth = 0;  // 0: per-tower default (6 integer, 4 sanov)
  int depth = 3;      // working depth N
  std::string mode = "RF";
  long long radius = 10;
  int size_cap = 6;
  std::uint64_t seed = 1;
  int workers = 0;
  std::uint64_t max_checks = 100'000'000;
  std::string out_path;
};

/// Deterministic report document: plain `key = value` lines, one document
/// per run. Given the same config and seed the bytes are identical; timing
/// is deliberately kept out of the document.
class ReportDoc {
 public:
  ReportDoc() { ss_ << "findep-report 1\n"; }

  void kv(const std::string& k, const std::string& v) { ss_ << k << " = " << v << '\n'; }
  void kv(const std::string& k, const char* v) { ss_ << k << " = " << v << '\n'; }
  template <class T>
  void kv(const std::string& k, T v) {
    ss_ << k << " = " << v << '\n';
  }
  void line(const std::string& s) { ss_ << s << '\n'; }

  std::string str() const { return ss_.str(); }

 private:
  std::ostringstream ss_;
};

void echo_config(ReportDoc& doc, const RunConfig& cfg, const std::string& command);

std::string render(const CosetId& c);
std::string render(const WitnessPrefix& w);
std::string render_pattern(const SignPattern& p);
std::string render(const PairTypeMatch& m);

template <class E>
std::string render_element(const E& e);

template <class E>
void report_verdict(ReportDoc& doc, const std::vector<E>& M, const Verdict& v);

template <class E>
void report_search(ReportDoc& doc, const SearchResult<E>& r, int size_cap);

void report_lemma(ReportDoc& doc, const LemmaReport& r);
void report_bounds(ReportDoc& doc, const BoundExperimentResult& r);

}  // namespace findep
