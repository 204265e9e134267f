#include "ordgraph/conditions.hpp"

#include <algorithm>
#include <deque>
#include <future>
#include <map>
#include <numeric>
#include <set>

namespace ordgraph {

std::vector<int> reachable(const Presentation& p, int v, int k) {
  std::vector<char> seen(static_cast<std::size_t>(p.vertex_count()), 0);
  std::vector<int> stack{v};
  seen[static_cast<std::size_t>(v)] = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int j = 0; j < k && j <= p.max_level(); ++j) {
      for (int u : p.level_generators(j)) {
        if (p.rng(u) != x || seen[static_cast<std::size_t>(p.src(u))]) continue;
        seen[static_cast<std::size_t>(p.src(u))] = 1;
        stack.push_back(p.src(u));
      }
    }
  }
  std::vector<int> out;
  for (int i = 0; i < p.vertex_count(); ++i)
    if (seen[static_cast<std::size_t>(i)]) out.push_back(i);
  return out;
}

RegularityReport regularity(const Presentation& p, int v, int k) {
  RegularityReport r;
  r.vertex = v;
  r.level = k;
  r.row_count = p.generators_into(k, v).size();
  r.source_regular = true;
  for (int w : reachable(p, v, k)) {
    if (p.generators_into(k, w).empty()) {
      r.source_regular = false;
      break;
    }
  }
  // Row-finiteness is automatic for finite presentations.
  r.regular = r.source_regular;
  return r;
}

bool is_regular(const Presentation& p, int v, int k) { return regularity(p, v, k).regular; }

namespace {

std::vector<int> by_name(const Presentation& p, std::vector<int> ids) {
  std::sort(ids.begin(), ids.end(), [&](int a, int b) { return p.name(a) < p.name(b); });
  return ids;
}

}  // namespace

std::optional<ConditionCWitness> condition_c(const Presentation& p) {
  for (int k = 1; k <= p.max_level(); ++k) {
    std::vector<int> lower;
    for (int j = 0; j < k; ++j)
      for (int u : p.level_generators(j)) lower.push_back(u);
    lower = by_name(p, lower);
    for (int a : p.level_generators(k)) {
      if (!is_regular(p, p.rng(a), k)) continue;
      // BFS over arcs b --u--> prepend(u, b) looking for a return to a.
      std::map<int, std::pair<int, int>> parent;  // node -> (previous node, generator)
      std::deque<int> queue{a};
      std::set<int> seen;
      bool found = false;
      int last_from = -1, last_gen = -1;
      while (!queue.empty() && !found) {
        int b = queue.front();
        queue.pop_front();
        for (int u : lower) {
          if (p.src(u) != p.rng(b)) continue;
          auto c = p.prepend(u, b);
          if (!c) continue;
          if (*c == a) {
            found = true;
            last_from = b;
            last_gen = u;
            break;
          }
          if (seen.insert(*c).second) {
            parent[*c] = {b, u};
            queue.push_back(*c);
          }
        }
      }
      if (!found) continue;
      std::vector<int> word{last_gen};  // generator applied last comes first
      for (int b = last_from; b != a;) {
        auto [prev, u] = parent.at(b);
        word.push_back(u);
        b = prev;
      }
      return ConditionCWitness{k, a, normalize(p, word)};
    }
  }
  return std::nullopt;
}

std::vector<std::vector<int>> components(const Presentation& p, int k) {
  std::vector<int> parent(static_cast<std::size_t>(p.vertex_count()));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (int j = 0; j < k && j <= p.max_level(); ++j)
    for (int u : p.level_generators(j)) parent[static_cast<std::size_t>(find(p.src(u)))] = find(p.rng(u));
  std::map<int, std::vector<int>> blocks;
  for (int v = 0; v < p.vertex_count(); ++v) blocks[find(v)].push_back(v);
  std::vector<std::vector<int>> out;
  for (auto& [_, b] : blocks) {
    std::sort(b.begin(), b.end(), [&](int x, int y) { return p.vertex_name(x) < p.vertex_name(y); });
    out.push_back(b);
  }
  std::sort(out.begin(), out.end(), [&](const auto& x, const auto& y) { return p.vertex_name(x[0]) < p.vertex_name(y[0]); });
  return out;
}

namespace {

// (k, n) with d = w^k * n, n >= 1.
std::optional<std::pair<int, mpz_class>> block_shape(const Ordinal& d) {
  if (d.terms().size() != 1) return std::nullopt;
  auto k = d.leading_level();
  if (!k) return std::nullopt;
  return std::make_pair(static_cast<int>(*k), d.terms()[0].coef);
}

}  // namespace

bool non_returning(const Presentation& p, const Path& e) {
  Ordinal d = degree(p, e);
  auto shape = block_shape(d);
  if (!shape) throw std::invalid_argument("non_returning needs degree w^k*n, got " + format(d));
  Ordinal unit = level_degree(shape->first);
  std::vector<Ordinal> gammas, betas;
  for (const auto& x : effective_positions(p, e)) {
    if (x < unit) betas.push_back(x);
    else if (x < d) gammas.push_back(x);
  }
  for (const auto& g : gammas) {
    Path hg = head(p, e, g);
    for (const auto& b : betas) {
      Path tb = tail(p, e, b);
      if (path_source(p, hg) != tb.base) continue;
      if (divides(p, e, compose(p, hg, tb))) return false;
    }
  }
  return true;
}

bool alpha_full(const Presentation& p, const Path& e, int k) {
  Ordinal unit = level_degree(k);
  std::set<int> visited;
  for (const auto& b : effective_positions(p, e))
    if (b < unit) visited.insert(path_source(p, head(p, e, b)));
  for (const auto& comp : components(p, k)) {
    if (std::find(comp.begin(), comp.end(), e.base) == comp.end()) continue;
    for (int u : comp) {
      bool hit = false;
      for (int w : reachable(p, u, k))
        if (visited.count(w)) {
          hit = true;
          break;
        }
      if (!hit) return false;
    }
    return true;
  }
  return false;
}

unsigned long default_max_n(const Presentation& p) {
  std::size_t most = 0;
  for (int k = 0; k <= p.max_level(); ++k) most = std::max(most, p.level_generators(k).size());
  return 2 * most + 2;
}

namespace {

constexpr std::size_t kCandidateCap = 4000;  // candidates examined per (level, component, length)

// Whether some composable word of m level-k generators with range in comp is non-returning and k-full.
bool has_witness(const Presentation& p, int k, const std::vector<int>& comp, unsigned long m) {
  const auto& gens = p.level_generators(k);
  std::set<int> in_comp(comp.begin(), comp.end());
  std::vector<int> word;
  std::size_t budget = kCandidateCap;
  bool found = false;
  auto dfs = [&](auto&& self, int at) -> void {
    if (found || budget == 0) return;
    if (word.size() == m) {
      --budget;
      Path e{p.rng(word[0]), word};
      if (non_returning(p, e) && alpha_full(p, e, k)) found = true;
      return;
    }
    for (int g : gens) {
      if (word.empty() ? !in_comp.count(p.rng(g)) : p.rng(g) != at) continue;
      word.push_back(g);
      self(self, p.src(g));
      word.pop_back();
      if (found) return;
    }
  };
  dfs(dfs, -1);
  return found;
}

struct CaseResult {
  int level;
  std::vector<int> component;
  unsigned long first_failure;  // 0 when all n pass
};

CaseResult check_case(const Presentation& p, int k, const std::vector<int>& comp, unsigned long max_n, unsigned long slack) {
  unsigned long top = max_n + slack;
  std::vector<char> ok(top + 2, 0);
  for (unsigned long m = top; m >= 1; --m) ok[m] = ok[m + 1] || has_witness(p, k, comp, m);
  for (unsigned long n = 1; n <= max_n; ++n)
    if (!ok[n]) return {k, comp, n};
  return {k, comp, 0};
}

}  // namespace

ConditionSResult condition_s(const Presentation& p, unsigned long max_n, unsigned long slack, bool parallel) {
  if (max_n < 1) throw std::invalid_argument("condition_s needs max_n >= 1");
  std::vector<std::pair<int, std::vector<int>>> cases;
  for (int k = 0; k <= p.max_level(); ++k) {
    if (p.level_generators(k).empty()) continue;
    for (auto& c : components(p, k)) cases.emplace_back(k, c);
  }
  std::vector<CaseResult> results;
  if (parallel) {
    std::vector<std::future<CaseResult>> futures;
    for (const auto& [k, c] : cases)
      futures.push_back(std::async(std::launch::async, [&p, k = k, c = c, max_n, slack] { return check_case(p, k, c, max_n, slack); }));
    for (auto& f : futures) results.push_back(f.get());
  } else {
    for (const auto& [k, c] : cases) {
      results.push_back(check_case(p, k, c, max_n, slack));
      if (results.back().first_failure != 0) break;
    }
  }
  // First failure in (level, component, n) order.
  for (const auto& r : results)
    if (r.first_failure != 0) return {false, r.first_failure, r.level, r.component};
  return {true, max_n, 0, {}};
}

}  // namespace ordgraph
