#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "findep/rng.hpp"
#include "findep/search.hpp"
#include "findep/tower.hpp"

using namespace findep;

TEST_CASE("integer tower projections") {
  IntegerTower t(3, 5, 6);
  CHECK(t.index(2) == 225);
  CHECK(t.project(7, 2).id == 7);
  CHECK(t.project(232, 2).id == 7);
  CHECK(t.project(-1, 1).id == 14);
  CHECK(t.gamma(2) == 15);
  CHECK(t.in_C(t.project(15, 2), 2));
  CHECK_FALSE(t.in_C(t.project(0, 2), 2));
  CHECK(t.in_C(t.project(225 + 15, 2), 2));
}

TEST_CASE("integer tower marked classes match modular arithmetic") {
  IntegerTower t(3, 5, 4);
  Rng rng(5);
  for (int i = 0; i < 20000; ++i) {
    long long z = static_cast<long long>(rng.below(2'000'000)) - 1'000'000;
    for (int n = 2; n <= 4; ++n) {
      long long mod = 1;
      for (int k = 0; k < n; ++k) mod *= 15;
      long long gamma = mod / 15;
      bool in_c = ((z % mod) + mod) % mod == gamma;
      CHECK(t.in_C(t.project(z, n), n) == in_c);
    }
  }
}

TEST_CASE("integer tower homomorphism and compatibility sample") {
  IntegerTower t(3, 5, 5);
  Rng rng(9);
  for (int i = 0; i < 10000; ++i) {
    long long g = static_cast<long long>(rng.below(100000)) - 50000;
    long long h = static_cast<long long>(rng.below(100000)) - 50000;
    int n = 1 + static_cast<int>(rng.below(5));
    CHECK(t.project(g + h, n) == t.act(g, t.project(h, n)));
    CHECK(t.reduce(t.project(g, n), n - 1) == t.project(g, n - 1));
  }
}

TEST_CASE("sanov tower generator images") {
  SanovTower t(3, 3);
  // a maps to [[1,2],[0,1]] mod 3.
  CHECK(t.project(parse("a"), 1).id == ((1ull * 3 + 2) * 3 + 0) * 3 + 1);
  // a^3 mod 9 is [[1,6],[0,1]], not the identity.
  CHECK(t.project(parse("a^3"), 2).id == ((1ull * 9 + 6) * 9 + 0) * 9 + 1);
  CHECK(t.project(parse("a^3"), 2) != t.identity_coset(2));
}

TEST_CASE("sanov tower index growth") {
  SanovTower t(3, 3);
  CHECK(t.index(0) == 1);
  CHECK(t.index(1) == 24);   // all of SL(2, Z/3)
  CHECK(t.index(2) == 648);  // jump 27
  CHECK(t.index(3) == 17496);
  CHECK(t.index_jump_lower_bound() == 24);
}

TEST_CASE("sanov level-1 image closure equals all determinant-one matrices") {
  SanovTower t(3, 3);
  // Independent count of SL(2, Z/3) by scanning all 3^4 matrices.
  int count = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d)
          if ((a * d - b * c % 3 + 3) % 3 == 1) ++count;
  CHECK(static_cast<std::uint64_t>(count) == t.index(1));
  // The radius-6 ball already hits every coset at level 1.
  std::vector<bool> seen(81, false);
  int hit = 0;
  for (const ReducedWord& w : word_ball(6)) {
    auto id = t.project(w, 1).id;
    if (!seen[id]) {
      seen[id] = true;
      ++hit;
    }
  }
  CHECK(hit == count);
}

TEST_CASE("sanov gamma powers") {
  SanovTower t(3, 4);
  for (int n = 1; n <= 4; ++n) {
    const ReducedWord g = t.gamma(n);
    CHECK(t.project(g, n - 1) == t.identity_coset(n - 1));
    CHECK(t.project(g, n) != t.identity_coset(n));
    CHECK(t.act(g, t.project(g, n)) != t.identity_coset(n));
  }
}

TEST_CASE("sanov homomorphism, children and coset group ops") {
  SanovTower t(3, 3);
  Rng rng(21);
  for (int i = 0; i < 10000; ++i) {
    ReducedWord g = random_word(rng, 0, 10), h = random_word(rng, 0, 10);
    int n = 1 + static_cast<int>(rng.below(3));
    CHECK(t.project(mul(g, h), n) == t.act(g, t.project(h, n)));
    CHECK(t.reduce(t.project(g, n), n - 1) == t.project(g, n - 1));
    CosetId c = t.project(g, n), d = t.project(h, n);
    CHECK(t.coset_mul(c, d) == t.project(mul(g, h), n));
    CHECK(t.coset_mul(c, t.coset_inv(c)) == t.identity_coset(n));
  }
  // children partition each level.
  std::uint64_t total = 0;
  for (std::uint64_t i = 0; i < t.index(2); ++i) total += t.children(t.coset_at(2, i)).size();
  CHECK(total == t.index(3));
}

TEST_CASE("verify_tower accepts the default towers") {
  IntegerTower zt(3, 5, 5);
  std::vector<long long> zsample;
  for (long long g = -60; g <= 60; ++g) zsample.push_back(g * 11 + 5);
  CHECK(verify_tower(zt, 4, zsample).all_pass());

  SanovTower wt(3, 3);
  CHECK(verify_tower(wt, 3, word_ball(5)).all_pass());
}

namespace {

// Degenerate tower for the forced-failure check: the marked element is
// chosen inside Gamma_n.
class BrokenTower final : public QuotientTower<long long> {
 public:
  explicit BrokenTower(IntegerTower base) : base_(std::move(base)) { init_caches(); }
  int max_depth() const override { return base_.max_depth(); }
  std::uint64_t index(int level) const override { return base_.index(level); }
  CosetId project(const long long& g, int level) const override { return base_.project(g, level); }
  CosetId reduce(const CosetId& c, int level) const override { return base_.reduce(c, level); }
  CosetId act(const long long& g, const CosetId& c) const override { return base_.act(g, c); }
  long long gamma(int level) const override { return base_.gamma(level) * 15; }
  long long identity() const override { return 0; }
  long long compose(const long long& g, const long long& h) const override { return g + h; }
  long long inverse(const long long& g) const override { return -g; }
  std::uint64_t index_jump_lower_bound() const override { return base_.index_jump_lower_bound(); }
  CosetId coset_at(int level, std::uint64_t i) const override { return base_.coset_at(level, i); }
  std::vector<CosetId> children(const CosetId& c) const override { return base_.children(c); }
  CosetId coset_mul(const CosetId& a, const CosetId& b) const override {
    return base_.coset_mul(a, b);
  }
  CosetId coset_inv(const CosetId& c) const override { return base_.coset_inv(c); }

 private:
  IntegerTower base_;
};

}  // namespace

TEST_CASE("verify_tower rejects a degenerate tower") {
  BrokenTower broken(IntegerTower(3, 5, 4));
  const TowerReport rep = verify_tower(broken, 3, std::vector<long long>{0, 1, 2, 3});
  CHECK_FALSE(rep.all_pass());
  bool gamma_fail = false;
  for (const auto& c : rep.checks)
    if (!c.pass && c.axiom.find("not in Gamma") != std::string::npos) gamma_fail = true;
  CHECK(gamma_fail);
}

TEST_CASE("depth errors") {
  IntegerTower t(3, 5, 3);
  CHECK_THROWS_AS(t.gamma(4), std::invalid_argument);
  CHECK_THROWS_AS((void)t.children(CosetId{3, 0}), std::invalid_argument);
  CHECK_THROWS_AS(IntegerTower(4, 5, 3), std::invalid_argument);
  CHECK_THROWS_AS(SanovTower(2, 3), std::invalid_argument);
}
