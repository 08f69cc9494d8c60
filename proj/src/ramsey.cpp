#include "findep/ramsey.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace findep {

namespace {

void validate(const std::vector<long long>& colors) {
  if (colors.empty()) throw std::invalid_argument("ramsey_upper needs at least one argument");
  for (long long c : colors)
    if (c < 1) throw std::invalid_argument("ramsey_upper arguments must be >= 1");
}

}  // namespace

BigInt ramsey_upper(const std::vector<long long>& colors) {
  validate(colors);
  for (long long c : colors)
    if (c == 1) return 1;
  // Degrees of freedom per color: d_i ranges over [0, c_i - 2].
  long long total = 0;
  for (long long c : colors) total += c - 2;
  const std::size_t dmax = static_cast<std::size_t>(total);

  // Pascal triangle up to dmax.
  std::vector<std::vector<BigInt>> binom(dmax + 1);
  for (std::size_t n = 0; n <= dmax; ++n) {
    binom[n].resize(n + 1);
    binom[n][0] = 1;
    for (std::size_t k = 1; k <= n; ++k)
      binom[n][k] = binom[n - 1][k - 1] + (k <= n - 1 ? binom[n - 1][k] : BigInt(0));
  }

  // A[n] = number of arrangements of the first i coordinates with |d| = n,
  // i.e. sum over d of n! / prod(d_j!); extending by a coordinate with cap c
  // convolves with binomial weights.
  std::vector<BigInt> acc(dmax + 1);
  acc[0] = 1;
  std::size_t reach = 0;
  for (long long c : colors) {
    const std::size_t cap = static_cast<std::size_t>(c - 2);
    std::vector<BigInt> next(dmax + 1);
    const std::size_t new_reach = reach + cap;
    for (std::size_t n = 0; n <= new_reach; ++n) {
      BigInt v = 0;
      const std::size_t dlo = n > reach ? n - reach : 0;
      for (std::size_t d = dlo; d <= std::min(cap, n); ++d) v += acc[n - d] * binom[n][d];
      next[n] = std::move(v);
    }
    acc = std::move(next);
    reach = new_reach;
  }
  BigInt w = 0;
  for (std::size_t n = 0; n <= reach; ++n) w += acc[n];
  return w + 1;
}

BigInt ramsey_upper_recursive(const std::vector<long long>& colors) {
  validate(colors);
  std::map<std::vector<long long>, BigInt> memo;
  auto rec = [&](auto&& self, std::vector<long long> c) -> BigInt {
    for (long long v : c)
      if (v == 1) return 1;
    if (c.size() == 1) return c[0];
    std::sort(c.begin(), c.end());
    auto it = memo.find(c);
    if (it != memo.end()) return it->second;
    BigInt r = 2 - static_cast<long long>(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      std::vector<long long> c2 = c;
      --c2[i];
      r += self(self, std::move(c2));
    }
    memo.emplace(std::move(c), r);
    return r;
  };
  return rec(rec, colors);
}

}  // namespace findep
