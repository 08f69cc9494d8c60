#include "findep/tower.hpp"

#include <algorithm>
#include <unordered_set>

namespace findep {

namespace {
constexpr std::uint64_t kMaxCosetStates = 40'000'000;

bool is_odd_prime(long long n) {
  if (n < 3 || n % 2 == 0) return false;
  for (long long d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}
}  // namespace

// ---------------------------------------------------------------------------
// IntegerTower

IntegerTower::IntegerTower(long long p, long long q, int max_depth)
    : p_(p), q_(q), max_depth_(max_depth) {
  if (!is_odd_prime(p) || !is_odd_prime(q) || p == q)
    throw std::invalid_argument("integer tower needs distinct odd primes >= 3");
  if (max_depth < 1) throw std::invalid_argument("max_depth must be >= 1");
  moduli_.push_back(1);
  for (int n = 1; n <= max_depth; ++n) {
    long long m = moduli_.back();
    if (m > (1LL << 62) / (p * q)) throw std::invalid_argument("integer tower modulus overflow");
    moduli_.push_back(m * p * q);
  }
  init_caches();
}

std::uint64_t IntegerTower::index(int level) const {
  return static_cast<std::uint64_t>(modulus(level));
}

CosetId IntegerTower::project(const long long& g, int level) const {
  long long m = modulus(level);
  long long r = g % m;
  if (r < 0) r += m;
  return {level, static_cast<std::uint64_t>(r)};
}

CosetId IntegerTower::reduce(const CosetId& c, int level) const {
  if (level > c.level) throw std::invalid_argument("reduce to deeper level");
  return {level, c.id % static_cast<std::uint64_t>(modulus(level))};
}

CosetId IntegerTower::act(const long long& g, const CosetId& c) const {
  long long m = modulus(c.level);
  long long r = (g % m + m + static_cast<long long>(c.id)) % m;
  return {c.level, static_cast<std::uint64_t>(r)};
}

long long IntegerTower::gamma(int level) const {
  if (level < 1 || level > max_depth_) throw std::invalid_argument("gamma level out of range");
  return moduli_[static_cast<std::size_t>(level - 1)];
}

std::vector<CosetId> IntegerTower::children(const CosetId& c) const {
  if (c.level + 1 > max_depth_) throw std::invalid_argument("children past max depth");
  std::vector<CosetId> out;
  long long step = modulus(c.level);
  out.reserve(static_cast<std::size_t>(p_ * q_));
  for (long long k = 0; k < p_ * q_; ++k)
    out.push_back({c.level + 1, c.id + static_cast<std::uint64_t>(k * step)});
  return out;
}

CosetId IntegerTower::coset_mul(const CosetId& a, const CosetId& b) const {
  if (a.level != b.level) throw std::invalid_argument("coset_mul level mismatch");
  return {a.level, (a.id + b.id) % static_cast<std::uint64_t>(modulus(a.level))};
}

CosetId IntegerTower::coset_inv(const CosetId& c) const {
  const std::uint64_t m = static_cast<std::uint64_t>(modulus(c.level));
  return {c.level, (m - c.id % m) % m};
}

// ---------------------------------------------------------------------------
// SanovTower

SanovTower::SanovTower(long long p, int max_depth) : p_(p), max_depth_(max_depth) {
  if (!is_odd_prime(p)) throw std::invalid_argument("sanov tower needs an odd prime >= 3");
  if (max_depth < 1) throw std::invalid_argument("max_depth must be >= 1");
  moduli_.push_back(1);
  for (int n = 1; n <= max_depth; ++n) {
    if (moduli_.back() > (1ULL << 15) / static_cast<std::uint64_t>(p))
      throw std::invalid_argument("sanov tower modulus too large");
    moduli_.push_back(moduli_.back() * static_cast<std::uint64_t>(p));
  }

  // BFS closure of the generator images at each level.
  cosets_.resize(static_cast<std::size_t>(max_depth) + 1);
  by_parent_.resize(static_cast<std::size_t>(max_depth) + 1);
  cosets_[0] = {0};
  for (int n = 1; n <= max_depth; ++n) {
    const std::uint64_t mod = moduli_[static_cast<std::size_t>(n)];
    const Mat gens[4] = {
        letter_mat({1, +1}, mod), letter_mat({1, -1}, mod),
        letter_mat({2, +1}, mod), letter_mat({2, -1}, mod)};
    std::unordered_set<std::uint64_t> seen;
    std::vector<std::uint64_t> frontier;
    const std::uint64_t id1 = encode(Mat{1, 0, 0, 1}, n);
    seen.insert(id1);
    frontier.push_back(id1);
    while (!frontier.empty()) {
      std::uint64_t cur = frontier.back();
      frontier.pop_back();
      Mat m = decode(cur, n);
      for (const Mat& g : gens) {
        std::uint64_t next = encode(mat_mul(m, g, mod), n);
        if (seen.insert(next).second) {
          if (seen.size() > kMaxCosetStates)
            throw std::invalid_argument("sanov tower coset count exceeds supported budget");
          frontier.push_back(next);
        }
      }
    }
    auto& list = cosets_[static_cast<std::size_t>(n)];
    list.assign(seen.begin(), seen.end());
    std::sort(list.begin(), list.end());

    auto& bp = by_parent_[static_cast<std::size_t>(n)];
    bp.reserve(list.size());
    for (std::uint64_t id : list) {
      Mat m = decode(id, n);
      m.a %= moduli_[n - 1];
      m.b %= moduli_[n - 1];
      m.c %= moduli_[n - 1];
      m.d %= moduli_[n - 1];
      bp.emplace_back(encode(m, n - 1), id);
    }
    std::sort(bp.begin(), bp.end());
  }
  min_jump_ = ~0ULL;
  for (int n = 0; n < max_depth; ++n)
    min_jump_ = std::min(min_jump_, cosets_[n + 1].size() / std::max<std::uint64_t>(1, cosets_[n].size()));
  init_caches();
}

std::uint64_t SanovTower::encode(const Mat& m, int level) const {
  const std::uint64_t mod = moduli_[static_cast<std::size_t>(level)];
  return ((m.a * mod + m.b) * mod + m.c) * mod + m.d;
}

SanovTower::Mat SanovTower::decode(std::uint64_t id, int level) const {
  const std::uint64_t mod = moduli_[static_cast<std::size_t>(level)];
  Mat m;
  m.d = id % mod;
  id /= mod;
  m.c = id % mod;
  id /= mod;
  m.b = id % mod;
  id /= mod;
  m.a = id;
  return m;
}

SanovTower::Mat SanovTower::mat_mul(const Mat& x, const Mat& y, std::uint64_t mod) const {
  return Mat{(x.a * y.a + x.b * y.c) % mod, (x.a * y.b + x.b * y.d) % mod,
             (x.c * y.a + x.d * y.c) % mod, (x.c * y.b + x.d * y.d) % mod};
}

SanovTower::Mat SanovTower::letter_mat(const Letter& l, std::uint64_t mod) const {
  const std::uint64_t two = 2 % mod, neg_two = (mod - 2 % mod) % mod;
  if (l.generator_index == 1) return l.sign > 0 ? Mat{1, two, 0, 1} : Mat{1, neg_two, 0, 1};
  if (l.generator_index == 2) return l.sign > 0 ? Mat{1, 0, two, 1} : Mat{1, 0, neg_two, 1};
  throw std::invalid_argument("sanov tower only supports rank-2 words");
}

std::uint64_t SanovTower::index(int level) const {
  return cosets_[static_cast<std::size_t>(level)].size();
}

CosetId SanovTower::project(const ReducedWord& g, int level) const {
  const std::uint64_t mod = moduli_[static_cast<std::size_t>(level)];
  Mat acc{1 % mod, 0, 0, 1 % mod};
  for (const Letter& l : g.letters()) acc = mat_mul(acc, letter_mat(l, mod), mod);
  return {level, encode(acc, level)};
}

CosetId SanovTower::reduce(const CosetId& c, int level) const {
  if (level > c.level) throw std::invalid_argument("reduce to deeper level");
  Mat m = decode(c.id, c.level);
  const std::uint64_t mod = moduli_[static_cast<std::size_t>(level)];
  m.a %= mod;
  m.b %= mod;
  m.c %= mod;
  m.d %= mod;
  return {level, encode(m, level)};
}

CosetId SanovTower::act(const ReducedWord& g, const CosetId& c) const {
  const std::uint64_t mod = moduli_[static_cast<std::size_t>(c.level)];
  Mat gm = decode(project(g, c.level).id, c.level);
  return {c.level, encode(mat_mul(gm, decode(c.id, c.level), mod), c.level)};
}

ReducedWord SanovTower::gamma(int level) const {
  if (level < 1 || level > max_depth_) throw std::invalid_argument("gamma level out of range");
  std::uint64_t e = 1;
  for (int k = 1; k < level; ++k) e *= static_cast<std::uint64_t>(p_);
  ReducedWord w(2);
  WordBuilder b(w);
  for (std::uint64_t k = 0; k < e; ++k) b.push({1, +1});
  return b.take();
}

CosetId SanovTower::coset_at(int level, std::uint64_t i) const {
  return {level, cosets_[static_cast<std::size_t>(level)][i]};
}

std::vector<CosetId> SanovTower::children(const CosetId& c) const {
  if (c.level + 1 > max_depth_) throw std::invalid_argument("children past max depth");
  const auto& bp = by_parent_[static_cast<std::size_t>(c.level + 1)];
  auto lo = std::lower_bound(bp.begin(), bp.end(), std::make_pair(c.id, std::uint64_t(0)));
  std::vector<CosetId> out;
  for (auto it = lo; it != bp.end() && it->first == c.id; ++it)
    out.push_back({c.level + 1, it->second});
  return out;
}

CosetId SanovTower::coset_mul(const CosetId& a, const CosetId& b) const {
  if (a.level != b.level) throw std::invalid_argument("coset_mul level mismatch");
  const std::uint64_t mod = moduli_[static_cast<std::size_t>(a.level)];
  return {a.level, encode(mat_mul(decode(a.id, a.level), decode(b.id, b.level), mod), a.level)};
}

CosetId SanovTower::coset_inv(const CosetId& c) const {
  const std::uint64_t mod = moduli_[static_cast<std::size_t>(c.level)];
  Mat m = decode(c.id, c.level);
  // det = 1 in the image, so the adjugate is the inverse.
  Mat inv_m{m.d, (mod - m.b % mod) % mod, (mod - m.c % mod) % mod, m.a};
  return {c.level, encode(inv_m, c.level)};
}

// ---------------------------------------------------------------------------
// verify_tower

template <class E>
TowerReport verify_tower(const QuotientTower<E>& t, int n_max, const std::vector<E>& sample) {
  TowerReport rep;
  auto add = [&rep](const std::string& axiom, bool pass, const std::string& detail) {
    rep.checks.push_back({axiom, pass, detail});
  };
  n_max = std::min(n_max, t.max_depth());

  for (int n = 1; n <= n_max; ++n) {
    const E g = t.gamma(n);
    bool in_prev = t.project(g, n - 1) == t.identity_coset(n - 1);
    add("gamma" + std::to_string(n) + " in Gamma_" + std::to_string(n - 1), in_prev, "");
    bool not_in = !(t.project(g, n) == t.identity_coset(n));
    add("gamma" + std::to_string(n) + " not in Gamma_" + std::to_string(n), not_in, "");
    if (n >= 2) {
      bool sq = !(t.act(g, t.project(g, n)) == t.identity_coset(n));
      add("gamma" + std::to_string(n) + "^2 not in Gamma_" + std::to_string(n), sq, "");
    }
  }
  for (int n = 1; n <= n_max; ++n) {
    bool grow = t.index(n) > t.index(n - 1) && t.index(n) > 2 * t.index(n - 1);
    add("index jump at level " + std::to_string(n) + " > 2", grow,
        std::to_string(t.index(n - 1)) + " -> " + std::to_string(t.index(n)));
  }
  {
    bool ok = true;
    std::string detail;
    for (const E& g : sample) {
      for (int n = 1; n <= n_max && ok; ++n) {
        if (!(t.reduce(t.project(g, n), n - 1) == t.project(g, n - 1))) {
          ok = false;
          detail = "compatibility fails at level " + std::to_string(n);
        }
      }
      if (!ok) break;
    }
    add("level compatibility on sample", ok, detail);
  }
  {
    bool ok = true;
    std::string detail;
    for (std::size_t i = 0; i < sample.size() && ok; ++i) {
      const E& g = sample[i];
      const E& h = sample[(i * 7 + 3) % sample.size()];
      for (int n = 1; n <= n_max && ok; ++n) {
        if (!(t.project(t.compose(g, h), n) == t.act(g, t.project(h, n)))) {
          ok = false;
          detail = "project(g h) != g * project(h) at level " + std::to_string(n);
        }
      }
    }
    add("homomorphism law on sample", ok, detail);
  }
  {
    bool ok = true;
    std::string detail;
    for (int m = 2; m <= n_max && ok; ++m) {
      for (int n = m + 1; n <= n_max && ok; ++n) {
        if (t.reduce(t.marked_coset(n), m) == t.marked_coset(m)) {
          ok = false;
          detail = "marked cosets collide at levels " + std::to_string(m) + "," + std::to_string(n);
        }
      }
    }
    add("marked cosets pairwise disjoint", ok, detail);
  }
  return rep;
}

template TowerReport verify_tower<long long>(const QuotientTower<long long>&, int,
                                             const std::vector<long long>&);
template TowerReport verify_tower<ReducedWord>(const QuotientTower<ReducedWord>&, int,
                                               const std::vector<ReducedWord>&);

}  // namespace findep
