#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "findep/ramsey.hpp"
#include "findep/rng.hpp"

using namespace findep;

TEST_CASE("base cases") {
  CHECK(ramsey_upper({3, 3}) == 6);
  CHECK(ramsey_upper({2, 3}) == 3);
  CHECK(ramsey_upper({2, 2}) == 2);
  for (long long c = 1; c <= 10; ++c) CHECK(ramsey_upper({c}) == c);
  CHECK(ramsey_upper({1, 7, 9}) == 1);
  CHECK(ramsey_upper({3, 3, 2}) == 6);
  CHECK_THROWS_AS(ramsey_upper({}), std::invalid_argument);
  CHECK_THROWS_AS(ramsey_upper({0, 3}), std::invalid_argument);
}

TEST_CASE("closed form equals the literal recursion") {
  Rng rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t k = 1 + rng.below(3);
    std::vector<long long> c;
    for (std::size_t i = 0; i < k; ++i) c.push_back(1 + static_cast<long long>(rng.below(5)));
    CHECK(ramsey_upper(c) == ramsey_upper_recursive(c));
  }
  CHECK(ramsey_upper({4, 4, 3}) == ramsey_upper_recursive({4, 4, 3}));
  CHECK(ramsey_upper({5, 4, 3, 2}) == ramsey_upper_recursive({5, 4, 3, 2}));
}

TEST_CASE("monotone and symmetric") {
  Rng rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t k = 1 + rng.below(4);
    std::vector<long long> c;
    for (std::size_t i = 0; i < k; ++i) c.push_back(1 + static_cast<long long>(rng.below(8)));
    const BigInt base = ramsey_upper(c);
    std::vector<long long> inc = c;
    inc[rng.below(k)] += 1;
    CHECK(ramsey_upper(inc) >= base);
    std::vector<long long> perm = c;
    for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    CHECK(ramsey_upper(perm) == base);
  }
}

TEST_CASE("the 18-argument bound is a large exact integer") {
  const std::vector<long long> args{21, 21, 13, 13, 4, 4, 4, 4, 3, 3, 3, 3, 6, 6, 4, 4, 3, 3};
  const BigInt v = ramsey_upper(args);
  CHECK(v > BigInt(1));
  const std::string s = v.str();
  CHECK(s.size() > 30);  // astronomically large, must print exactly
  // Deterministic across runs.
  CHECK(ramsey_upper(args) == v);
}
