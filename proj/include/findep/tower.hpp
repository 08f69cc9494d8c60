#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "findep/word.hpp"

namespace findep {

/// An element of Gamma / Gamma_n, tagged with its level n.
struct CosetId {
  int level = 0;
  std::uint64_t id = 0;

  friend bool operator==(const CosetId& a, const CosetId& b) {
    return a.level == b.level && a.id == b.id;
  }
  friend bool operator!=(const CosetId& a, const CosetId& b) { return !(a == b); }
};

/// Interface over a strictly decreasing chain Gamma = Gamma_0 > Gamma_1 > ...
/// of finite-index normal subgroups, with marked elements gamma_n in
/// Gamma_{n-1} \ Gamma_n and the marked coset classes C_n = pi_n^-1(gamma_n
/// Gamma_n). Implementations are immutable after construction and all
/// queries are pure, so towers can be shared freely across threads.
template <class E>
class QuotientTower {
 public:
  using Element = E;
  virtual ~QuotientTower() = default;

  virtual int max_depth() const = 0;
  /// |Gamma / Gamma_n| for 0 <= n <= max_depth.
  virtual std::uint64_t index(int level) const = 0;
  virtual CosetId project(const E& g, int level) const = 0;
  /// Reduction to a shallower (or equal) level.
  virtual CosetId reduce(const CosetId& c, int level) const = 0;
  /// Left translation g * c at c.level.
  virtual CosetId act(const E& g, const CosetId& c) const = 0;
  virtual E gamma(int level) const = 0;
  virtual E identity() const = 0;
  virtual E compose(const E& g, const E& h) const = 0;
  virtual E inverse(const E& g) const = 0;
  /// Lower bound for every index jump [Gamma_n : Gamma_{n+1}], n >= 0.
  virtual std::uint64_t index_jump_lower_bound() const = 0;
  /// i-th coset at a level, 0 <= i < index(level), in a fixed enumeration.
  virtual CosetId coset_at(int level, std::uint64_t i) const = 0;
  /// All cosets at level c.level + 1 that reduce to c, in a fixed order.
  virtual std::vector<CosetId> children(const CosetId& c) const = 0;
  /// Group structure of Gamma / Gamma_n (both operands at the same level).
  virtual CosetId coset_mul(const CosetId& a, const CosetId& b) const = 0;
  virtual CosetId coset_inv(const CosetId& c) const = 0;

  CosetId identity_coset(int level) const { return identity_cache_.at(level); }
  CosetId marked_coset(int level) const { return marked_cache_.at(level); }

  /// True iff the reduction of c to level n is the marked coset gamma_n
  /// Gamma_n. Requires c.level >= n >= 1.
  bool in_C(const CosetId& c, int n) const {
    if (c.level < n) throw std::invalid_argument("in_C: coset shallower than queried level");
    return reduce(c, n) == marked_cache_[static_cast<std::size_t>(n)];
  }

 protected:
  /// Concrete constructors call this last; gamma classes are cached eagerly.
  void init_caches() {
    identity_cache_.clear();
    marked_cache_.clear();
    for (int n = 0; n <= max_depth(); ++n) {
      identity_cache_.push_back(project(identity(), n));
      marked_cache_.push_back(n >= 1 ? project(gamma(n), n) : identity_cache_.back());
    }
  }

 private:
  std::vector<CosetId> identity_cache_, marked_cache_;
};

/// Gamma = Z with Gamma_n = p^n q^n Z and gamma_n = (pq)^{n-1}.
class IntegerTower final : public QuotientTower<long long> {
 public:
  IntegerTower(long long p, long long q, int max_depth = 6);

  int max_depth() const override { return max_depth_; }
  std::uint64_t index(int level) const override;
  CosetId project(const long long& g, int level) const override;
  CosetId reduce(const CosetId& c, int level) const override;
  CosetId act(const long long& g, const CosetId& c) const override;
  long long gamma(int level) const override;
  long long identity() const override { return 0; }
  long long compose(const long long& g, const long long& h) const override { return g + h; }
  long long inverse(const long long& g) const override { return -g; }
  std::uint64_t index_jump_lower_bound() const override { return static_cast<std::uint64_t>(p_ * q_); }
  CosetId coset_at(int level, std::uint64_t i) const override { return {level, i}; }
  std::vector<CosetId> children(const CosetId& c) const override;
  CosetId coset_mul(const CosetId& a, const CosetId& b) const override;
  CosetId coset_inv(const CosetId& c) const override;

  long long p() const { return p_; }
  long long q() const { return q_; }

 private:
  long long modulus(int level) const { return moduli_[static_cast<std::size_t>(level)]; }
  long long p_, q_;
  int max_depth_;
  std::vector<long long> moduli_;
};

/// Congruence tower for the rank-2 free group embedded in SL(2, Z) via
/// a -> [[1,2],[0,1]], b -> [[1,0],[2,1]]. Gamma_n is the kernel of reduction
/// mod p^n restricted to the image, gamma_n = a^(p^{n-1}). Coset ids pack the
/// four matrix entries mod p^n into one integer; the per-level coset lists
/// are computed once by BFS closure over the generator images.
class SanovTower final : public QuotientTower<ReducedWord> {
 public:
  explicit SanovTower(long long p, int max_depth = 4);

  int max_depth() const override { return max_depth_; }
  std::uint64_t index(int level) const override;
  CosetId project(const ReducedWord& g, int level) const override;
  CosetId reduce(const CosetId& c, int level) const override;
  CosetId act(const ReducedWord& g, const CosetId& c) const override;
  ReducedWord gamma(int level) const override;
  ReducedWord identity() const override { return ReducedWord(2); }
  ReducedWord compose(const ReducedWord& g, const ReducedWord& h) const override { return mul(g, h); }
  ReducedWord inverse(const ReducedWord& g) const override { return inv(g); }
  std::uint64_t index_jump_lower_bound() const override { return min_jump_; }
  CosetId coset_at(int level, std::uint64_t i) const override;
  std::vector<CosetId> children(const CosetId& c) const override;
  CosetId coset_mul(const CosetId& a, const CosetId& b) const override;
  CosetId coset_inv(const CosetId& c) const override;

  long long p() const { return p_; }

 private:
  struct Mat {
    std::uint64_t a, b, c, d;
  };
  std::uint64_t modulus(int level) const { return moduli_[static_cast<std::size_t>(level)]; }
  std::uint64_t encode(const Mat& m, int level) const;
  Mat decode(std::uint64_t id, int level) const;
  Mat mat_mul(const Mat& x, const Mat& y, std::uint64_t mod) const;
  Mat letter_mat(const Letter& l, std::uint64_t mod) const;

  long long p_;
  int max_depth_;
  std::uint64_t min_jump_ = 0;
  std::vector<std::uint64_t> moduli_;
  // Per level: sorted coset ids, and the same list sorted by (parent id, id).
  std::vector<std::vector<std::uint64_t>> cosets_;
  std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> by_parent_;
};

struct TowerAxiomCheck {
  std::string axiom;
  bool pass = false;
  std::string detail;
};

struct TowerReport {
  std::vector<TowerAxiomCheck> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

/// Checks the tower axioms up to n_max by direct computation on the given
/// sample elements: gamma_n in Gamma_{n-1} \ Gamma_n, gamma_n^2 not in
/// Gamma_n, level compatibility, the homomorphism law, and strict index
/// growth with jumps > 2. Failures become report entries, not errors.
template <class E>
TowerReport verify_tower(const QuotientTower<E>& t, int n_max, const std::vector<E>& sample);

}  // namespace findep
