#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "findep/boundary.hpp"
#include "findep/tower.hpp"
#include "findep/word.hpp"

namespace findep {

enum class Mode { RF, FREE, GENERIC };

/// Worker count for the OpenMP kernels; 0 means "all available".
struct ExecPolicy {
  int workers = 0;
};

/// Sign assignment on an ordered finite subset M of the group; entry i
/// is the sign of M[i].
struct SignPattern {
  std::vector<std::int8_t> signs;  // +1 or -1

  static SignPattern from_mask(std::uint32_t mask, std::size_t n) {
    SignPattern p;
    p.signs.resize(n);
    for (std::size_t i = 0; i < n; ++i) p.signs[i] = (mask >> i) & 1u ? +1 : -1;
    return p;
  }
  std::uint32_t to_mask() const {
    std::uint32_t m = 0;
    for (std::size_t i = 0; i < signs.size(); ++i)
      if (signs[i] > 0) m |= 1u << i;
    return m;
  }
};

/// One block of the target set in GENERIC mode: a boundary piece described
/// by prefix constraints paired with one coset.
struct GenericBlock {
  PrefixConstraintSet cs;
  CosetId coset;
};

/// Witness for one sign pattern: a boundary prefix certificate (trivial in
/// RF mode), the z-coset at the working depth, and the chosen level for
/// every positive element.
struct PatternWitness {
  WitnessPrefix y;
  CosetId z;
  std::vector<int> positive_levels;  // aligned with the positive elements in M order
};

struct Verdict {
  enum class Status { independent, not_witnessed };
  Status status = Status::not_witnessed;
  int depth = 0;
  /// For independent verdicts: entry `mask` is the witness for that pattern.
  std::vector<PatternWitness> witnesses;
  /// For not_witnessed: every pattern mask with no witness at this depth.
  std::vector<std::uint32_t> failed_patterns;
};

/// Finite-depth independence checker for the pair (A+, A-) where A+ is the
/// union of the level blocks (RF: C_n; FREE: D_n x C_n; GENERIC: explicit
/// blocks) over 2 <= n <= depth and A- is the complement minus the excluded
/// point. A successful check is an exact witness; a failure only means "not
/// witnessed up to this depth".
template <class E>
class IndependenceEngine {
 public:
  IndependenceEngine(const QuotientTower<E>& tower, Mode mode, int depth,
                     std::vector<GenericBlock> generic_blocks = {});

  const QuotientTower<E>& tower() const { return *tower_; }
  Mode mode() const { return mode_; }
  int depth() const { return depth_; }

  /// Seeks x = (y, z) with s x in A_{omega(s)} for every s in M, witnessed
  /// at the working depth. Negative conditions above the depth are
  /// discharged by the extension argument: every index jump exceeds |M|,
  /// so deeper digits of z can avoid all forbidden cosets, and boundary
  /// branching >= 3 lets infinite words avoid finitely many forbidden
  /// prefixes. This is checked as a precondition.
  std::optional<PatternWitness> check_pattern(const std::vector<E>& M,
                                              const SignPattern& omega) const;

  /// All 2^|M| sign patterns, OpenMP-parallel over patterns.
  Verdict is_independence_set(const std::vector<E>& M, const ExecPolicy& pol = {}) const;
  /// Plain-loop reference implementation kept for testing.
  Verdict is_independence_set_serial(const std::vector<E>& M) const;

  /// Re-validates a witness by direct membership computation, independent of
  /// the search path in check_pattern.
  bool validate(const std::vector<E>& M, const SignPattern& omega,
                const PatternWitness& w) const;

 private:
  void check_set_preconditions(const std::vector<E>& M) const;
  std::optional<PatternWitness> try_leaf(const std::vector<E>& M, const SignPattern& omega,
                                         const std::vector<std::size_t>& pos,
                                         const std::vector<int>& levels,
                                         const CosetId& cls) const;
  Verdict combine(const std::vector<E>& M,
                  std::vector<std::optional<PatternWitness>>&& per_pattern) const;

  const QuotientTower<E>* tower_;
  Mode mode_;
  int depth_;
  std::vector<GenericBlock> generic_;
};

using IntEngine = IndependenceEngine<long long>;
using WordEngine = IndependenceEngine<ReducedWord>;

/// General boundary satisfiability used by GENERIC mode and as the direct
/// cross-check of the specialized FREE-mode path: atoms are conditions
/// "(g y) starts / does not start with w"; clauses are disjunctions.
struct GeneralAtom {
  ReducedWord g;
  Polarity pol = Polarity::must_start_with;
  ReducedWord w;
};
struct GeneralClause {
  std::vector<GeneralAtom> any_of;
};

class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

std::optional<WitnessPrefix> satisfiable_general(const std::vector<GeneralAtom>& must,
                                                 const std::vector<GeneralClause>& clauses,
                                                 std::uint8_t rank,
                                                 std::uint64_t node_budget = 2'000'000);

}  // namespace findep
