#pragma once

#include <cstdint>
#include <vector>

#include "findep/classify.hpp"
#include "findep/independence.hpp"

namespace findep {

struct SearchBudget {
  std::uint64_t max_checks = 100'000'000;  // independence checks, not seconds
  std::size_t max_report_sets = 32;
};

template <class E>
struct SearchResult {
  int max_size = 0;  // k*
  std::vector<std::vector<E>> maximal_sets;  // capped at max_report_sets
  std::uint64_t independence_checks = 0;
  std::uint64_t candidates_pruned = 0;
  bool budget_exhausted = false;
  std::size_t ball_size = 0;
  int size_cap_hit = 0;  // nonzero iff the search stopped at the cap
};

/// Incremental exhaustive search for maximum independence sets inside the
/// ball: level k+1 candidates extend level-k sets by a later element and are
/// pruned unless every k-subset is already independent. OpenMP-parallel over
/// the candidates of a level; results are collected in candidate order, so
/// the outcome does not depend on scheduling.
template <class E>
SearchResult<E> search_max(const IndependenceEngine<E>& engine, const std::vector<E>& ball,
                           int size_cap, const SearchBudget& budget = {},
                           const ExecPolicy& pol = {});

/// Reference implementation without pruning: tests every subset up to the
/// cap. Only usable on tiny balls; kept as the oracle for the pruned search.
template <class E>
SearchResult<E> search_max_bruteforce(const IndependenceEngine<E>& engine,
                                      const std::vector<E>& ball, int size_cap);

std::vector<long long> integer_ball(long long radius);
/// All reduced words of length <= radius, shortest first, in a fixed order.
std::vector<ReducedWord> word_ball(int radius, std::uint8_t rank = 2);

struct BoundExperimentResult {
  PairType type = PairType::A1;
  int bound_constant = 0;
  int max_found = 0;
  bool below_bound = false;
  std::uint64_t candidate_pairs = 0;
  std::uint64_t typed_edges = 0;
  std::uint64_t independence_checks = 0;
  bool budget_exhausted = false;
  std::vector<std::vector<ReducedWord>> best_sets;  // capped
};

struct BoundBudget {
  std::uint64_t max_pairs = 200'000'000;
  std::uint64_t max_checks = 5'000'000;
  std::size_t max_report_sets = 8;
};

/// Searches the radius ball for independence sets all of whose ordered pairs
/// (in the listing order) carry the given type, and reports the largest one
/// found together with whether it stays below the type's bound constant.
BoundExperimentResult bound_experiment(const IndependenceEngine<ReducedWord>& engine,
                                       PairType type, int radius,
                                       const BoundBudget& budget = {}, const ExecPolicy& pol = {});

}  // namespace findep
