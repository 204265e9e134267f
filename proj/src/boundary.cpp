#include "ordgraph/boundary.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ordgraph/conditions.hpp"

namespace ordgraph {

StarPath StarPath::finite(Path path) {
  StarPath f;
  f.finite_ = true;
  f.path_ = std::move(path);
  return f;
}

StarPath StarPath::infinite(Path high, int level, EPSeq<int> seq) {
  StarPath f;
  f.finite_ = false;
  f.path_ = std::move(high);
  f.level_ = level;
  seq.canonicalize();
  f.seq_ = std::move(seq);
  return f;
}

bool operator==(const StarPath& a, const StarPath& b) {
  if (a.finite_ != b.finite_ || !(a.path_ == b.path_)) return false;
  return a.finite_ || (a.level_ == b.level_ && a.seq_ == b.seq_);
}

bool operator<(const StarPath& a, const StarPath& b) {
  if (a.finite_ != b.finite_) return a.finite_;
  if (!(a.path_ == b.path_)) return a.path_ < b.path_;
  if (a.finite_) return false;
  if (a.level_ != b.level_) return a.level_ < b.level_;
  return a.seq_ < b.seq_;
}

Ordinal star_length(const Presentation& p, const StarPath& f) {
  if (f.is_finite()) return degree(p, f.path()) + Ordinal(1);
  return degree(p, f.high()) + level_degree(f.level() + 1);
}

namespace {

std::size_t small(const mpz_class& n) {
  if (!n.fits_ulong_p() || n.get_ui() > (1UL << 22)) throw std::length_error("star path head too long to materialize");
  return n.get_ui();
}

}  // namespace

Path star_head(const Presentation& p, const StarPath& f, const Ordinal& beta) {
  if (!(beta < star_length(p, f))) throw std::out_of_range("star_head position " + format(beta) + " is not below L(f)");
  if (f.is_finite()) return head(p, f.path(), beta);
  Ordinal dh = degree(p, f.high());
  if (beta <= dh) return head(p, f.high(), beta);
  DivMod dm = divmod_omega(left_sub(dh, beta), Ordinal(static_cast<unsigned long>(f.level())));
  std::size_t j = small(*dm.quotient);
  std::vector<int> w = f.high().word;
  auto body = f.seq().take(j);
  w.insert(w.end(), body.begin(), body.end());
  auto inner = generator_head(p, f.seq().at(j), dm.remainder);
  w.insert(w.end(), inner.begin(), inner.end());
  return Path{f.range(), std::move(w)};
}

StarPath star_tail(const Presentation& p, const StarPath& f, const Ordinal& beta) {
  if (!(beta < star_length(p, f))) throw std::out_of_range("star_tail position " + format(beta) + " is not below L(f)");
  if (f.is_finite()) return StarPath::finite(tail(p, f.path(), beta));
  Ordinal dh = degree(p, f.high());
  if (beta < dh) return StarPath::infinite(tail(p, f.high(), beta), f.level(), f.seq());
  DivMod dm = divmod_omega(left_sub(dh, beta), Ordinal(static_cast<unsigned long>(f.level())));
  EPSeq<int> s = f.seq().drop(*dm.quotient);
  if (!dm.remainder.is_zero()) s = s.replace_head(generator_tail(p, s.at(std::size_t{0}), dm.remainder));
  int r = p.rng(s.at(std::size_t{0}));
  return StarPath::infinite(vertex_path(r), f.level(), std::move(s));
}

StarPath star_compose(const Presentation& p, const Path& e, const StarPath& f) {
  if (path_source(p, e) != f.range()) throw PathError("source/range mismatch in star_compose");
  if (e.word.empty()) return f;
  if (f.is_finite()) return StarPath::finite(compose(p, e, f.path()));
  if (!f.high().word.empty()) return StarPath::infinite(compose(p, e, f.high()), f.level(), f.seq());
  int K = f.level();
  std::vector<int> hi, mid, lo;
  for (int g : e.word) {
    if (p.level(g) > K) hi.push_back(g);
    else if (p.level(g) == K) mid.push_back(g);
    else lo.push_back(g);
  }
  EPSeq<int> s = f.seq();
  if (!lo.empty()) {
    auto a = p.fold_prepend(lo, s.at(std::size_t{0}));
    if (!a) throw std::logic_error("prepend table incomplete while composing star path");
    s = s.replace_head(*a);
  }
  for (auto it = mid.rbegin(); it != mid.rend(); ++it) s = s.cons(*it);
  int r = hi.empty() ? p.rng(s.at(std::size_t{0})) : p.rng(hi[0]);
  return StarPath::infinite(Path{r, std::move(hi)}, K, std::move(s));
}

bool star_divides(const Presentation& p, const Path& e, const StarPath& f) {
  if (e.base != f.range()) return false;
  Ordinal d = degree(p, e);
  if (!(d < star_length(p, f))) return false;
  return star_head(p, f, d) == e;
}

StarPath omega_power(const Presentation& p, const Path& h) {
  if (h.word.empty()) throw std::invalid_argument("omega_power needs positive degree");
  if (path_source(p, h) != h.base) throw std::invalid_argument("omega_power needs a loop");
  int K = p.level(h.word[0]);
  std::vector<int> top, lo;
  for (int g : h.word) (p.level(g) == K ? top : lo).push_back(g);
  std::vector<int> cycle = top;
  if (!lo.empty()) {
    auto a = p.fold_prepend(lo, top[0]);
    if (!a) throw std::logic_error("prepend table incomplete in omega_power");
    cycle[0] = *a;
  }
  return StarPath::infinite(vertex_path(h.base), K, EPSeq<int>(top, cycle));
}

std::vector<Ordinal> star_positions(const Presentation& p, const StarPath& f) {
  if (f.is_finite()) return effective_positions(p, f.path());
  std::set<Ordinal> acc;
  for (const auto& x : effective_positions(p, f.high())) acc.insert(x);
  Ordinal dh = degree(p, f.high());
  Ordinal unit(static_cast<unsigned long>(f.level()));
  const auto& s = f.seq();
  for (std::size_t j = 0; j <= s.window(); ++j) {
    Ordinal base = dh + omega_term(unit, mpz_class(static_cast<unsigned long>(j)));
    for (const auto& r : generator_positions(p, s.at(j))) acc.insert(base + r);
  }
  return {acc.begin(), acc.end()};
}

bool is_boundary(const Presentation& p, const StarPath& f) {
  Ordinal L = star_length(p, f);
  std::map<int, std::vector<char>> regular;
  auto reg = [&](int v) -> const std::vector<char>& {
    auto it = regular.find(v);
    if (it != regular.end()) return it->second;
    std::vector<char> row;
    for (int k = 0; k <= p.max_level(); ++k) row.push_back(is_regular(p, v, k) ? 1 : 0);
    return regular.emplace(v, std::move(row)).first->second;
  };
  for (const auto& g : star_positions(p, f)) {
    int v = path_source(p, star_head(p, f, g));
    const auto& row = reg(v);
    for (int k = 0; k <= p.max_level(); ++k)
      if (row[static_cast<std::size_t>(k)] && !(g + level_degree(k) < L)) return false;
  }
  return true;
}

namespace {

// Vertices from which an infinite chain of generators (stepping from range to source) starts.
std::vector<char> live_vertices(const Presentation& p) {
  std::vector<char> live(static_cast<std::size_t>(p.vertex_count()), 1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < p.vertex_count(); ++v) {
      if (!live[static_cast<std::size_t>(v)]) continue;
      bool any = false;
      for (int g = 0; g < p.generator_count() && !any; ++g) any = p.rng(g) == v && live[static_cast<std::size_t>(p.src(g))];
      if (!any) {
        live[static_cast<std::size_t>(v)] = 0;
        changed = true;
      }
    }
  }
  return live;
}

}  // namespace

StarPath maximal_extension(const Presentation& p, int v) {
  auto live = live_vertices(p);
  std::vector<int> chosen;
  std::map<int, std::size_t> visited;
  int cur = v;
  while (!visited.count(cur)) {
    int best = -1;
    for (int g = 0; g < p.generator_count(); ++g) {
      if (p.rng(g) != cur) continue;
      if (best < 0) {
        best = g;
        continue;
      }
      auto key = [&](int x) { return std::make_tuple(-p.level(x), live[static_cast<std::size_t>(p.src(x))] ? 0 : 1, p.name(x)); };
      if (key(g) < key(best)) best = g;
    }
    if (best < 0) return StarPath::finite(normalize(p, chosen, v));
    visited[cur] = chosen.size();
    chosen.push_back(best);
    cur = p.src(best);
  }
  std::size_t i0 = visited[cur];
  std::vector<int> pre(chosen.begin(), chosen.begin() + static_cast<long>(i0));
  std::vector<int> cyc(chosen.begin() + static_cast<long>(i0), chosen.end());
  StarPath f = omega_power(p, normalize(p, cyc));
  if (!pre.empty()) f = star_compose(p, normalize(p, pre), f);
  if (!is_boundary(p, f)) throw std::logic_error("maximal_extension produced a non-boundary path");
  return f;
}

std::vector<Path> normal_words(const Presentation& p, int v, std::size_t length, bool loops_only) {
  std::vector<Path> out;
  if (length == 0) {
    if (v >= 0) out.push_back(vertex_path(v));
    else
      for (int x = 0; x < p.vertex_count(); ++x) out.push_back(vertex_path(x));
    return out;
  }
  std::vector<int> word;
  auto dfs = [&](auto&& self) -> void {
    if (word.size() == length) {
      Path a{p.rng(word[0]), word};
      if (!loops_only || path_source(p, a) == a.base) out.push_back(std::move(a));
      return;
    }
    for (int g = 0; g < p.generator_count(); ++g) {
      if (word.empty()) {
        if (v >= 0 && p.rng(g) != v) continue;
      } else {
        int last = word.back();
        if (p.rng(g) != p.src(last) || p.level(g) > p.level(last)) continue;
      }
      word.push_back(g);
      self(self);
      word.pop_back();
    }
  };
  dfs(dfs);
  return out;
}

std::vector<StarPath> enumerate_boundary(const Presentation& p, int v, std::size_t prefix_bound, std::size_t cycle_bound) {
  std::set<StarPath> found;
  for (std::size_t lp = 0; lp <= prefix_bound; ++lp) {
    for (const auto& pre : normal_words(p, v, lp)) {
      StarPath fin = StarPath::finite(pre);
      if (is_boundary(p, fin)) found.insert(fin);
      int u = path_source(p, pre);
      for (std::size_t lc = 1; lc <= cycle_bound; ++lc) {
        for (const auto& c : normal_words(p, u, lc, true)) {
          StarPath f = star_compose(p, pre, omega_power(p, c));
          if (is_boundary(p, f)) found.insert(f);
        }
      }
    }
  }
  std::vector<StarPath> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), [&](const StarPath& a, const StarPath& b) { return format_star(p, a) < format_star(p, b); });
  return out;
}

std::optional<unsigned long> fixed_by_loop(const Presentation& p, const Path& h, const StarPath& g) {
  if (g.is_finite()) return fixed_by_loop(p, h, g.path());
  if (h.word.empty()) throw std::invalid_argument("fixed_by_loop needs a loop of positive degree");
  if (path_source(p, h) != h.base || h.base != g.range()) throw std::invalid_argument("fixed_by_loop needs s(h)=r(h)=r(g)");
  int first = g.high().word.empty() ? g.seq().at(std::size_t{0}) : g.high().word[0];
  int top = p.level(h.word[0]);
  if (top < p.level(first)) {
    int cur = first;
    for (std::size_t n = 1; n <= p.level_generators(p.level(first)).size(); ++n) {
      auto r = p.fold_prepend(h.word, cur);
      if (!r) return std::nullopt;
      cur = *r;
      if (cur == first) return n;
    }
    return std::nullopt;
  }
  // A loop of the sequence's own level fixes g only when g = h^w.
  if (top == g.level() && g.high().word.empty() && omega_power(p, h) == g) return 1;
  return std::nullopt;
}

StarPath parse_star(const Presentation& p, const std::string& text) {
  auto open = text.find('(');
  if (open == std::string::npos) return StarPath::finite(parse_path(p, text));
  const std::string suffix = ")^w";
  if (text.size() < open + suffix.size() || text.compare(text.size() - suffix.size(), suffix.size(), suffix) != 0)
    throw PathError("star path literal must end with ')^w': '" + text + "'");
  std::string pre = text.substr(0, open);
  std::string cyc = text.substr(open + 1, text.size() - suffix.size() - open - 1);
  if (!pre.empty()) {
    if (pre.back() != '.') throw PathError("expected '.' before '(' in '" + text + "'");
    pre.pop_back();
  }
  StarPath f = omega_power(p, parse_path(p, cyc));
  if (!pre.empty()) f = star_compose(p, parse_path(p, pre), f);
  return f;
}

std::string format_star(const Presentation& p, const StarPath& f) {
  if (f.is_finite()) return format_path(p, f.path());
  std::vector<int> lead = f.high().word;
  lead.insert(lead.end(), f.seq().prefix.begin(), f.seq().prefix.end());
  std::string out = format_word(p, lead);
  if (!out.empty()) out += ".";
  return out + "(" + format_word(p, f.seq().cycle) + ")^w";
}

}  // namespace ordgraph
