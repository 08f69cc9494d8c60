#include "findep/word.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>

namespace findep {

namespace {
std::atomic<std::size_t> g_word_cap{10000};

bool cancels(const Letter& a, const Letter& b) {
  return a.generator_index == b.generator_index && a.sign != b.sign;
}
}  // namespace

std::size_t word_length_cap() { return g_word_cap.load(std::memory_order_relaxed); }
void set_word_length_cap(std::size_t cap) { g_word_cap.store(cap, std::memory_order_relaxed); }

ReducedWord::ReducedWord(std::uint8_t rank, const std::vector<Letter>& raw) : rank_(rank) {
  WordBuilder b(rank);
  for (const Letter& l : raw) b.push(l);
  *this = b.take();
}

bool operator<(const ReducedWord& a, const ReducedWord& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Letter &x = a[i], &y = b[i];
    if (x.generator_index != y.generator_index) return x.generator_index < y.generator_index;
    if (x.sign != y.sign) return x.sign > y.sign;  // positive before inverse
  }
  return false;
}

ReducedWord ReducedWord::slice(std::size_t from, std::size_t to) const {
  ReducedWord out(rank_);
  out.letters_.assign(letters_.begin() + from, letters_.begin() + to);
  return out;
}

void WordBuilder::push(Letter l) {
  if (l.generator_index == 0 || l.generator_index > w_.rank_)
    throw std::invalid_argument("letter index out of rank");
  auto& ls = w_.letters_;
  if (!ls.empty() && cancels(ls.back(), l)) {
    ls.pop_back();
    return;
  }
  if (ls.size() + 1 > word_length_cap()) throw WordTooLong(ls.size() + 1);
  ls.push_back(l);
}

ReducedWord parse(const std::string& text, std::uint8_t rank) {
  WordBuilder b(rank);
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (!std::isalpha(static_cast<unsigned char>(c)))
      throw std::invalid_argument(std::string("unexpected character '") + c + "' in word");
    Letter l;
    l.generator_index = static_cast<std::uint8_t>(std::tolower(static_cast<unsigned char>(c)) - 'a' + 1);
    l.sign = std::islower(static_cast<unsigned char>(c)) ? +1 : -1;
    if (l.generator_index > rank)
      throw std::invalid_argument(std::string("generator '") + c + "' out of declared rank");
    ++i;
    long long exponent = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      bool neg = false;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
        neg = text[i] == '-';
        ++i;
      }
      if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
        throw std::invalid_argument("malformed exponent");
      long long e = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        e = e * 10 + (text[i] - '0');
        if (e > static_cast<long long>(word_length_cap())) throw WordTooLong(static_cast<std::size_t>(e));
        ++i;
      }
      exponent = neg ? -e : e;
    }
    Letter eff = exponent >= 0 ? l : l.inverse();
    for (long long k = 0; k < std::llabs(exponent); ++k) b.push(eff);
  }
  return b.take();
}

std::string format(const ReducedWord& w) {
  std::string out;
  out.reserve(w.size());
  for (const Letter& l : w.letters()) {
    char c = static_cast<char>('a' + l.generator_index - 1);
    out.push_back(l.sign > 0 ? c : static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  return out;
}

ReducedWord mul(const ReducedWord& x, const ReducedWord& y) {
  if (x.rank() != y.rank()) throw std::invalid_argument("mixed word ranks");
  std::size_t i = x.size(), j = 0;
  while (i > 0 && j < y.size() && cancels(x[i - 1], y[j])) {
    --i;
    ++j;
  }
  if (i + (y.size() - j) > word_length_cap()) throw WordTooLong(i + y.size() - j);
  ReducedWord out(x.rank());
  out.letters_.reserve(i + y.size() - j);
  out.letters_.assign(x.letters().begin(), x.letters().begin() + i);
  out.letters_.insert(out.letters_.end(), y.letters().begin() + j, y.letters().end());
  return out;
}

ReducedWord inv(const ReducedWord& x) {
  ReducedWord out(x.rank());
  out.letters_.reserve(x.size());
  for (auto it = x.letters().rbegin(); it != x.letters().rend(); ++it)
    out.letters_.push_back(it->inverse());
  return out;
}

ReducedWord word_u(int n, std::uint8_t rank) {
  if (n < 2) throw std::invalid_argument("word_u requires n >= 2");
  if (rank < 2) throw std::invalid_argument("word_u requires rank >= 2");
  ReducedWord out(rank);
  WordBuilder b(out);
  const Letter a{1, +1}, a1{1, -1}, bb{2, +1}, b1{2, -1};
  for (int k = 0; k < n; ++k) b.push(a);
  b.push(bb);
  for (int k = 0; k < n; ++k) b.push(a1);
  b.push(b1);
  return b.take();
}

bool starts_with(const ReducedWord& w, const ReducedWord& p) {
  if (p.size() > w.size()) return false;
  return std::equal(p.letters().begin(), p.letters().end(), w.letters().begin());
}

bool ends_with(const ReducedWord& w, const ReducedWord& s) {
  if (s.size() > w.size()) return false;
  return std::equal(s.letters().rbegin(), s.letters().rend(), w.letters().rbegin());
}

bool prefix_compatible(const ReducedWord& a, const ReducedWord& b) {
  return a.size() <= b.size() ? starts_with(b, a) : starts_with(a, b);
}

std::optional<int> u_prefix_index(const ReducedWord& w) {
  // A prefix u_m forces the initial a-run of w to have length exactly m.
  std::size_t run = 0;
  while (run < w.size() && w[run] == Letter{1, +1}) ++run;
  if (run < 2) return std::nullopt;
  int m = static_cast<int>(run);
  if (w.size() < 2 * run + 2) return std::nullopt;
  if (starts_with(w, word_u(m, w.rank()))) return m;
  return std::nullopt;
}

std::optional<int> u_suffix_index(const ReducedWord& w) {
  std::size_t run = 0;
  while (run < w.size() && w[w.size() - 1 - run] == Letter{1, -1}) ++run;
  if (run < 2) return std::nullopt;
  int n = static_cast<int>(run);
  if (w.size() < 2 * run + 2) return std::nullopt;
  if (ends_with(w, inv(word_u(n, w.rank())))) return n;
  return std::nullopt;
}

std::vector<StructuralForm> decompose(const ReducedWord& t) {
  std::vector<StructuralForm> out;
  const auto p = u_prefix_index(t);
  const auto s = u_suffix_index(t);
  auto fill_flags = [](StructuralForm& f) {
    f.v_nontrivial = !f.middle.empty();
    f.v_not_starting_b = f.middle.empty() || f.middle.front() != Letter{2, +1};
    f.v_not_ending_b_inv = f.middle.empty() || f.middle.back() != Letter{2, -1};
  };
  if (p && s) {
    std::size_t lp = 2 * static_cast<std::size_t>(*p) + 2;
    std::size_t ls = 2 * static_cast<std::size_t>(*s) + 2;
    if (lp + ls < t.size()) {
      StructuralForm f;
      f.family = ShapeFamily::prefix_suffix;
      f.prefix_index = *p;
      f.suffix_index = *s;
      f.middle = t.slice(lp, t.size() - ls);
      fill_flags(f);
      out.push_back(std::move(f));
    }
  }
  if (p) {
    StructuralForm f;
    f.family = ShapeFamily::prefix_only;
    f.prefix_index = *p;
    f.middle = t.slice(2 * static_cast<std::size_t>(*p) + 2, t.size());
    fill_flags(f);
    out.push_back(std::move(f));
  }
  if (s) {
    StructuralForm f;
    f.family = ShapeFamily::suffix_only;
    f.suffix_index = *s;
    f.middle = t.slice(0, t.size() - (2 * static_cast<std::size_t>(*s) + 2));
    fill_flags(f);
    out.push_back(std::move(f));
  }
  // u_{n1} u_{n2}^-1 reduces to a^{n1} b a^{n2-n1} b^-1 a^-{n2}; the end runs
  // determine the only candidate pair.
  {
    std::size_t lead = 0;
    while (lead < t.size() && t[lead] == Letter{1, +1}) ++lead;
    std::size_t trail = 0;
    while (trail < t.size() && t[t.size() - 1 - trail] == Letter{1, -1}) ++trail;
    if (lead >= 2 && trail >= 2 && lead != trail) {
      int n1 = static_cast<int>(lead), n2 = static_cast<int>(trail);
      if (t == mul(word_u(n1, t.rank()), inv(word_u(n2, t.rank())))) {
        StructuralForm f;
        f.family = ShapeFamily::double_u;
        f.prefix_index = n1;
        f.suffix_index = n2;
        f.middle = ReducedWord(t.rank());
        fill_flags(f);
        out.push_back(std::move(f));
      }
    }
  }
  return out;
}

ReducedWord reassemble(const StructuralForm& f, std::uint8_t rank) {
  switch (f.family) {
    case ShapeFamily::prefix_suffix:
      return mul(mul(word_u(f.prefix_index, rank), f.middle), inv(word_u(f.suffix_index, rank)));
    case ShapeFamily::prefix_only:
      return mul(word_u(f.prefix_index, rank), f.middle);
    case ShapeFamily::suffix_only:
      return mul(f.middle, inv(word_u(f.suffix_index, rank)));
    case ShapeFamily::double_u:
      return mul(word_u(f.prefix_index, rank), inv(word_u(f.suffix_index, rank)));
  }
  throw std::logic_error("bad shape family");
}

}  // namespace findep
