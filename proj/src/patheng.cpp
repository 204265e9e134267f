#include "ordgraph/patheng.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace ordgraph {

namespace {

constexpr unsigned long kMaxWord = 1UL << 22;

std::size_t small(const mpz_class& n) {
  if (!n.fits_ulong_p() || n.get_ui() > kMaxWord) throw std::length_error("head word too long to materialize");
  return n.get_ui();
}

}  // namespace

Path vertex_path(int v) { return Path{v, {}}; }

int path_range(const Presentation&, const Path& a) { return a.base; }

int path_source(const Presentation& p, const Path& a) { return a.word.empty() ? a.base : p.src(a.word.back()); }

Ordinal level_degree(int k) { return omega_pow(Ordinal(static_cast<unsigned long>(k))); }

Path normalize(const Presentation& p, const std::vector<int>& word, int base) {
  if (word.empty()) {
    if (base < 0) throw PathError("empty word needs a vertex");
    return vertex_path(base);
  }
  std::vector<int> rev;  // reversed result; rev.back() is the current head
  rev.reserve(word.size());
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    int u = *it;
    if (rev.empty()) {
      rev.push_back(u);
      continue;
    }
    int h = rev.back();
    if (p.src(u) != p.rng(h))
      throw PathError("word does not compose at " + p.name(u) + "." + p.name(h));
    if (p.level(u) < p.level(h)) {
      auto r = p.prepend(u, h);
      if (!r) throw std::logic_error("prepend table has no entry for (" + p.name(u) + ", " + p.name(h) + ")");
      rev.back() = *r;
    } else {
      rev.push_back(u);
    }
  }
  Path out{p.rng(rev.back()), {rev.rbegin(), rev.rend()}};
  if (base >= 0 && base != out.base) throw PathError("word does not start at the given vertex");
  return out;
}

Path compose(const Presentation& p, const Path& a, const Path& b) {
  if (path_source(p, a) != b.base) throw PathError("source/range mismatch in compose");
  if (a.word.empty()) return b;
  if (b.word.empty()) return a;
  std::vector<int> w = a.word;
  w.insert(w.end(), b.word.begin(), b.word.end());
  return normalize(p, w);
}

Ordinal degree(const Presentation& p, const Path& a) {
  std::vector<OrdTerm> terms;
  for (int g : a.word) {
    Ordinal e(static_cast<unsigned long>(p.level(g)));
    if (!terms.empty() && terms.back().exponent == e)
      terms.back().coef += 1;
    else
      terms.push_back(OrdTerm{e, 1});
  }
  return Ordinal::from_terms(std::move(terms));
}

std::vector<int> generator_head(const Presentation& p, int x, const Ordinal& r) {
  int k = p.level(x);
  if (r.is_zero()) return {};
  if (r == level_degree(k)) return {x};
  if (k == 0 || r > level_degree(k)) throw std::out_of_range("position beyond generator degree");
  DivMod dm = divmod_omega(r, Ordinal(static_cast<unsigned long>(k - 1)));
  const auto& L = p.gen(x).lasso;
  std::size_t j = small(*dm.quotient);
  std::vector<int> out = L.take(j);
  if (!dm.remainder.is_zero()) {
    auto inner = generator_head(p, L.at(j), dm.remainder);
    out.insert(out.end(), inner.begin(), inner.end());
  }
  return out;
}

int generator_tail(const Presentation& p, int x, const Ordinal& r) {
  int k = p.level(x);
  if (k == 0 || r.is_zero() || r >= level_degree(k)) throw std::out_of_range("tail position must lie strictly inside an atom");
  DivMod dm = divmod_omega(r, Ordinal(static_cast<unsigned long>(k - 1)));
  const mpz_class& j = *dm.quotient;
  if (dm.remainder.is_zero()) return p.tail_at(x, j);
  int inner = generator_tail(p, p.gen(x).lasso.at(j), dm.remainder);
  int rest = p.tail_at(x, j + 1);
  auto r2 = p.prepend(inner, rest);
  if (!r2) throw std::logic_error("prepend table has no entry for (" + p.name(inner) + ", " + p.name(rest) + ")");
  return *r2;
}

Path head(const Presentation& p, const Path& a, const Ordinal& beta) {
  Ordinal pos;
  for (std::size_t i = 0; i < a.word.size(); ++i) {
    if (beta == pos) return Path{a.base, {a.word.begin(), a.word.begin() + static_cast<long>(i)}};
    Ordinal next = pos + level_degree(p.level(a.word[i]));
    if (beta >= next) {
      pos = std::move(next);
      continue;
    }
    std::vector<int> w(a.word.begin(), a.word.begin() + static_cast<long>(i));
    auto inner = generator_head(p, a.word[i], left_sub(pos, beta));
    w.insert(w.end(), inner.begin(), inner.end());
    return Path{a.base, std::move(w)};
  }
  if (beta == pos) return a;
  throw std::out_of_range("head position " + format(beta) + " exceeds degree " + format(pos));
}

Path tail(const Presentation& p, const Path& a, const Ordinal& beta) {
  Ordinal pos;
  for (std::size_t i = 0; i < a.word.size(); ++i) {
    if (beta == pos) {
      int r = i == 0 ? a.base : p.src(a.word[i - 1]);
      return Path{r, {a.word.begin() + static_cast<long>(i), a.word.end()}};
    }
    Ordinal next = pos + level_degree(p.level(a.word[i]));
    if (beta >= next) {
      pos = std::move(next);
      continue;
    }
    int t = generator_tail(p, a.word[i], left_sub(pos, beta));
    std::vector<int> w{t};
    w.insert(w.end(), a.word.begin() + static_cast<long>(i) + 1, a.word.end());
    return Path{p.rng(t), std::move(w)};
  }
  if (beta == pos) return vertex_path(path_source(p, a));
  throw std::out_of_range("tail position " + format(beta) + " exceeds degree " + format(pos));
}

bool divides(const Presentation& p, const Path& a, const Path& b) {
  if (a.base != b.base) return false;
  Ordinal da = degree(p, a);
  if (da > degree(p, b)) return false;
  return head(p, b, da) == a;
}

std::vector<Ordinal> generator_positions(const Presentation& p, int x) {
  int k = p.level(x);
  std::vector<Ordinal> out{Ordinal()};
  if (k == 0) return out;
  const auto& L = p.gen(x).lasso;
  const auto& o = p.orbit(x);
  std::size_t pre = L.prefix.size(), cyc = L.cycle.size();
  if (o) {
    pre = std::max(pre, o->prefix.size());
    cyc = std::lcm(cyc, o->cycle.size());
  }
  Ordinal unit(static_cast<unsigned long>(k - 1));
  std::set<Ordinal> acc;
  for (std::size_t j = 0; j <= pre + cyc; ++j) {
    Ordinal base = omega_term(unit, mpz_class(static_cast<unsigned long>(j)));
    for (const auto& r : generator_positions(p, L.at(j))) acc.insert(base + r);
  }
  return {acc.begin(), acc.end()};
}

std::vector<Ordinal> effective_positions(const Presentation& p, const Path& a) {
  std::set<Ordinal> acc;
  Ordinal pos;
  for (int g : a.word) {
    for (const auto& r : generator_positions(p, g)) acc.insert(pos + r);
    pos = pos + level_degree(p.level(g));
  }
  acc.insert(pos);
  return {acc.begin(), acc.end()};
}

std::optional<unsigned long> fixed_by_loop(const Presentation& p, const Path& h, const Path& g) {
  if (h.word.empty()) throw std::invalid_argument("fixed_by_loop needs a loop of positive degree");
  if (path_source(p, h) != h.base || h.base != g.base) throw std::invalid_argument("fixed_by_loop needs s(h)=r(h)=r(g)");
  if (g.word.empty()) return std::nullopt;
  int top = p.level(h.word[0]);
  int g0 = g.word[0];
  if (top >= p.level(g0)) return std::nullopt;
  // h is absorbed into the first generator of g; prepending is injective, so the orbit is a cycle.
  int cur = g0;
  for (std::size_t n = 1; n <= p.level_generators(p.level(g0)).size(); ++n) {
    auto r = p.fold_prepend(h.word, cur);
    if (!r) return std::nullopt;
    cur = *r;
    if (cur == g0) return n;
  }
  return std::nullopt;
}

Path parse_path(const Presentation& p, const std::string& text) {
  if (text.rfind("id:", 0) == 0) {
    auto v = p.find_vertex(text.substr(3));
    if (!v) throw PathError("unknown vertex in '" + text + "'");
    return vertex_path(*v);
  }
  std::vector<int> word;
  std::size_t start = 0;
  while (true) {
    std::size_t dot = text.find('.', start);
    std::string part = text.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    auto g = p.find_generator(part);
    if (!g) throw PathError("unknown generator '" + part + "' in path literal '" + text + "'");
    word.push_back(*g);
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  return normalize(p, word);
}

std::string format_word(const Presentation& p, const std::vector<int>& w) {
  std::string s;
  for (int g : w) {
    if (!s.empty()) s += ".";
    s += p.name(g);
  }
  return s;
}

std::string format_path(const Presentation& p, const Path& a) {
  if (a.word.empty()) return "id:" + p.vertex_name(a.base);
  return format_word(p, a.word);
}

}  // namespace ordgraph
