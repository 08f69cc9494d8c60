#pragma once

#include <optional>
#include <string>
#include <vector>

#include "findep/boundary.hpp"
#include "findep/tower.hpp"
#include "findep/word.hpp"

namespace findep {

/// The nine structural pair types. For an ordered pair (s1, s2) with
/// t = s1 s2^-1 the type pins down exactly when a point x'' with
/// s2 x'' in D_{k2} x C_{k2} has s1 x'' in the positive target set.
enum class PairType { A1, A2, B1, B2, B3, B4, C1, C2, C3 };

const char* to_string(PairType t);
std::optional<PairType> pair_type_from_string(const std::string& s);

/// Strict upper bounds for independence sets all of whose ordered pairs
/// carry one fixed type.
int type_bound_constant(PairType t);

struct PairTypeMatch {
  PairType type;
  /// false: the match is for (s1, s2) with t = s1 s2^-1;
  /// true: for the transposed pair (s2, s1) with t replaced by t^-1.
  bool transposed = false;
  int m = 0;   // A1, A2, B1, C2, C3
  int n1 = 0;  // all but C2/C3
  int n2 = 0;  // A1, B3, B4, C1
  ReducedWord v;
  ReducedWord t;  // the oriented word the parameters refer to
};

/// Membership outcome of "first-coordinate point lands in the positive set"
/// for points whose second coordinate sits in block k2, as a function of the
/// boundary part only.
enum class YKind {
  always,       // in, for every point of the block
  never,        // out, for every point of the block
  starts,       // in iff the boundary point starts with `w`
  not_starts,   // in iff the boundary point does not start with `w`
  z_dependent,  // depends on coset digits below the working depth
};

struct YCond {
  YKind kind = YKind::never;
  ReducedWord w;
};

struct Outcome {
  int level = 0;  // the block the point lands in; meaningful unless never/z_dependent
  YCond cond;
};

bool outcome_equal(const Outcome& a, const Outcome& b);

/// Levels intrinsic to t at the working depth: the unique n with
/// t in gamma_n Gamma_n (if visible), the same for t^-1, and the deepest n
/// with t in Gamma_n.
struct TLevels {
  std::optional<int> marked;
  std::optional<int> marked_inv;
  int depth = 0;
};

TLevels t_levels(const QuotientTower<ReducedWord>& tower, const ReducedWord& t, int N);

/// The exact membership structure of t at depth N: entry k2 - 2 describes
/// points whose second coordinate lies in D_{k2} x C_{k2}. Derived from the
/// cylinder-translation calculus plus coset arithmetic alone.
std::vector<Outcome> exact_outcomes(const QuotientTower<ReducedWord>& tower, const ReducedWord& t,
                                    int N);

/// The membership structure a match claims, compiled from its type clause.
std::vector<Outcome> clause_outcomes(const PairTypeMatch& match, int N);

/// True iff some point is witnessed in s1^-1 A+ cap s2^-1 A+ at depth N.
bool joint_positivity(const QuotientTower<ReducedWord>& tower, const ReducedWord& s1,
                      const ReducedWord& s2, int N);

/// Words with a live membership structure at depth N (some block outcome is
/// not `never`), built by pairing u-shaped candidates with tails from the
/// given radius and keeping those that hit the required coset classes.
/// Any jointly positive pair has such a word as its quotient s1 s2^-1.
std::vector<ReducedWord> live_words(const QuotientTower<ReducedWord>& tower, int N,
                                    int tail_radius);

/// All pair-type matches for (s1, s2) in both orientations. Every returned
/// match satisfies its type's structural and coset side conditions AND has
/// its clause verified against the exact membership structure, so its
/// predictions are sound at depth N. Throws std::invalid_argument if s1 == s2
/// or the joint-positivity precondition fails.
std::vector<PairTypeMatch> classify_pair(const QuotientTower<ReducedWord>& tower,
                                         const ReducedWord& s1, const ReducedWord& s2, int N);

/// Same, but returns empty instead of throwing when the precondition fails.
std::vector<PairTypeMatch> classify_pair_if_applicable(const QuotientTower<ReducedWord>& tower,
                                                       const ReducedWord& s1,
                                                       const ReducedWord& s2, int N);

struct Prediction {
  enum class Kind { in_at, not_in, needs_more_prefix };
  Kind kind = Kind::not_in;
  int level = 0;
};

/// Evaluates the matched type's biconditional for a point with second
/// coordinate in block k2 and the given partial knowledge of its boundary
/// part. For transposed matches the "second coordinate" is s1 x''.
Prediction predict_membership(const PairTypeMatch& match, int k2,
                              const PrefixConstraintSet& y_info, int N);

/// Direct membership computation for a concrete sketch: eta_prefix is a
/// finite prefix of the second coordinate's boundary part, zeta its coset at
/// depth N. Returns in/out plus the landing level, or undetermined when the
/// prefix is too short.
struct DirectMembership {
  Membership m = Membership::undetermined;
  int level = 0;
};

DirectMembership direct_membership(const QuotientTower<ReducedWord>& tower, const ReducedWord& t,
                                   const ReducedWord& eta_prefix, const CosetId& zeta, int N);

}  // namespace findep
