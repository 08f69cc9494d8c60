#pragma once

#include <optional>
#include <string>
#include <vector>

#include "findep/word.hpp"

namespace findep {

enum class Polarity { must_start_with, must_not_start_with };

/// One "starts with w" / "does not start with w" condition on a boundary
/// point, i.e. on an infinite reduced word.
struct PrefixConstraint {
  Polarity polarity = Polarity::must_start_with;
  ReducedWord word;

  friend bool operator==(const PrefixConstraint& a, const PrefixConstraint& b) {
    return a.polarity == b.polarity && a.word == b.word;
  }
};

/// A finite conjunction of prefix constraints describing a subset of the
/// boundary. exclude_a_infinity additionally removes the constant point a^oo;
/// removing one point never changes satisfiability (every nonempty set cut
/// out by finitely many cylinders is uncountable), so the flag is only
/// carried into witnesses.
struct PrefixConstraintSet {
  std::vector<PrefixConstraint> constraints;
  bool exclude_a_infinity = false;

  void add(Polarity p, ReducedWord w) { constraints.push_back({p, std::move(w)}); }
};

/// A finite certificate for a boundary point: `prefix` satisfies every
/// positive constraint literally, and no negative word can become a prefix
/// of any reduced extension up to certified_depth (and hence ever, once
/// certified_depth exceeds every negative word's length).
struct WitnessPrefix {
  ReducedWord prefix;
  int certified_depth = 0;
  bool a_infinity_excluded = false;
};

/// The constraint on y equivalent to (t y in D_n) == want_in.
/// If t does not start with u_n the condition is "y starts with t^-1 u_n";
/// if t starts with u_n it is "y does not start with t^-1 u_n b".
PrefixConstraint translate_cylinder(const ReducedWord& t, int n, bool want_in);

/// Decides whether an infinite reduced word satisfying all constraints
/// exists, returning a witness prefix if so. Exact: positive words must form
/// a chain under the literal prefix order, and the finite search over
/// reduced extensions (branching 2r-1 >= 3) is conclusive.
std::optional<WitnessPrefix> satisfiable(const PrefixConstraintSet& cs);

/// Re-checks a witness against its constraint set from scratch.
bool validate_witness(const PrefixConstraintSet& cs, const WitnessPrefix& w);

/// Extends a valid prefix to the target length while still avoiding every
/// negative constraint word; exists whenever `from` is extendable at all.
std::optional<ReducedWord> extend_witness(const PrefixConstraintSet& cs, const ReducedWord& from,
                                          std::size_t target);

enum class Membership { in, out, undetermined };

/// Direct oracle for the cylinder-translation lemmas: computes the reduced
/// product t * y_prefix literally and reports whether every / no / some
/// infinite extension of y_prefix lands t y in D_n.
Membership member_prefix(const ReducedWord& y_prefix, const ReducedWord& t, int n);

/// Evaluates a single prefix constraint against a concrete finite prefix:
/// in = every extension satisfies it, out = none does.
Membership eval_constraint_on_prefix(const PrefixConstraint& c, const ReducedWord& y_prefix);

std::string to_string(const PrefixConstraint& c);
std::string to_string(const PrefixConstraintSet& cs);

}  // namespace findep
