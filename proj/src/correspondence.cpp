#include "ordgraph/correspondence.hpp"

#include <random>

#include "ordgraph/boundary.hpp"
#include "ordgraph/conditions.hpp"

namespace ordgraph {

XElement x_delta(const Presentation& p, int a, const Representation& rep) {
  XElement x;
  x.level = p.level(a);
  x.values.emplace(a, vertex_matrix(p, rep, p.src(a)));
  return x;
}

LaurentMatrix x_inner(const XElement& x, const XElement& y, const Representation& rep) {
  if (x.level != y.level) throw std::invalid_argument("inner product of elements at different levels");
  LaurentMatrix sum = rep.zero();
  for (const auto& [a, m] : x.values) {
    auto it = y.values.find(a);
    if (it != y.values.end()) sum = sum + m.adjoint() * it->second;
  }
  return sum;
}

XElement x_right_act(const XElement& x, const LaurentMatrix& m) {
  XElement out;
  out.level = x.level;
  for (const auto& [a, v] : x.values) {
    LaurentMatrix r = v * m;
    if (!r.is_zero()) out.values.emplace(a, std::move(r));
  }
  return out;
}

XElement x_add(const XElement& x, const XElement& y) {
  if (x.level != y.level) throw std::invalid_argument("sum of elements at different levels");
  XElement out = x;
  for (const auto& [a, m] : y.values) {
    auto it = out.values.find(a);
    if (it == out.values.end()) {
      out.values.emplace(a, m);
      continue;
    }
    it->second = it->second + m;
    if (it->second.is_zero()) out.values.erase(it);
  }
  return out;
}

namespace {

void check_lower(const Presentation& p, const Path& g, int k) {
  for (int u : g.word)
    if (p.level(u) >= k) throw std::invalid_argument("left action needs a path of level below " + std::to_string(k));
}

// g . a as a level-k generator, when composable.
std::optional<int> absorb(const Presentation& p, const Path& g, int a) {
  if (path_source(p, g) != p.rng(a)) return std::nullopt;
  if (g.word.empty()) return a;
  return p.fold_prepend(g.word, a);
}

}  // namespace

XElement x_left_act(const Presentation& p, const Path& g, const XElement& x) {
  check_lower(p, g, x.level);
  XElement out;
  out.level = x.level;
  for (const auto& [a, m] : x.values) {
    auto b = absorb(p, g, a);
    if (b) out.values.emplace(*b, m);  // prepending is injective
  }
  return out;
}

XElement x_left_act_adjoint(const Presentation& p, const Path& g, const XElement& x) {
  check_lower(p, g, x.level);
  XElement out;
  out.level = x.level;
  for (int a : p.level_generators(x.level)) {
    auto b = absorb(p, g, a);
    if (!b) continue;
    auto it = x.values.find(*b);
    if (it != x.values.end()) out.values.emplace(a, it->second);
  }
  return out;
}

LaurentMatrix x_psi(const Presentation& p, const XElement& x, const Representation& rep_big) {
  LaurentMatrix sum = rep_big.zero();
  for (const auto& [a, m] : x.values) sum = sum + generator_matrix(p, rep_big, a) * m;
  return sum;
}

bool x_well_formed(const Presentation& p, const XElement& x, const Representation& rep) {
  for (const auto& [a, m] : x.values)
    if (p.level(a) != x.level || !(vertex_matrix(p, rep, p.src(a)) * m == m)) return false;
  return true;
}

namespace {

// Finite sum of c * T_p T_q^* with p, q in Lambda_k and s(p) = s(q).
struct AlgebraElement {
  struct Mono {
    GaussRat c;
    Path p, q;
  };
  std::vector<Mono> terms;
};

LaurentMatrix image(const Presentation& p, const Representation& rep, const AlgebraElement& a) {
  LaurentMatrix sum = rep.zero();
  for (const auto& t : a.terms) sum = sum + LaurentScalar(t.c) * (path_matrix(p, rep, t.p) * path_matrix(p, rep, t.q).adjoint());
  return sum;
}

XElement act(const Presentation& p, const AlgebraElement& a, const XElement& x) {
  XElement out;
  out.level = x.level;
  for (const auto& t : a.terms) {
    XElement y = x_left_act(p, t.p, x_left_act_adjoint(p, t.q, x));
    for (auto& [g, m] : y.values) m = LaurentScalar(t.c) * m;
    out = x_add(out, y);
  }
  return out;
}

class Sampler {
 public:
  Sampler(const Presentation& p, int k, const Representation& rep, std::uint64_t seed) : p_(p), k_(k), rep_(rep), rng_(seed) {
    for (std::size_t len = 0; len <= 2; ++len)
      for (const auto& w : normal_words(p, -1, len)) {
        bool low = true;
        for (int u : w.word) low = low && p.level(u) < k;
        if (low) paths_.push_back(w);
      }
    for (const auto& a : paths_)
      for (const auto& b : paths_)
        if (path_source(p, a) == path_source(p, b)) monos_.emplace_back(a, b);
  }

  GaussRat coef() {
    std::uniform_int_distribution<long> d(-2, 2);
    long re = d(rng_), im = d(rng_);
    if (re == 0 && im == 0) re = 1;
    return GaussRat(re, im);
  }

  AlgebraElement algebra() {
    AlgebraElement a;
    std::uniform_int_distribution<std::size_t> n(1, 3), pick(0, monos_.size() - 1);
    for (std::size_t i = n(rng_); i > 0; --i) {
      const auto& [x, y] = monos_[pick(rng_)];
      a.terms.push_back({coef(), x, y});
    }
    return a;
  }

  XElement element() {
    XElement x;
    x.level = k_;
    std::bernoulli_distribution keep(0.6);
    for (int a : p_.level_generators(k_)) {
      if (!keep(rng_)) continue;
      LaurentMatrix m = vertex_matrix(p_, rep_, p_.src(a)) * image(p_, rep_, algebra());
      if (!m.is_zero()) x.values.emplace(a, std::move(m));
    }
    return x;
  }

 private:
  const Presentation& p_;
  int k_;
  const Representation& rep_;
  std::mt19937_64 rng_;
  std::vector<Path> paths_;
  std::vector<std::pair<Path, Path>> monos_;
};

}  // namespace

RelationReport verify_correspondence(const Presentation& p, int k, const Representation& rep_small, const Representation& rep_big,
                                     const CorrespondenceOptions& opt) {
  if (k < 0 || k > p.max_level()) throw std::invalid_argument("level out of range");
  RelationReport out;
  auto fail = [&](const char* rel, std::string inst, const LaurentMatrix& r, const std::vector<std::string>& vars) {
    if (!r.is_zero()) out.failures.push_back({rel, std::move(inst), format(r, vars)});
  };
  // rho is the identity on shared generators.
  if (rep_small.size != rep_big.size) {
    out.failures.push_back({"restriction", "size", std::to_string(rep_small.size) + " vs " + std::to_string(rep_big.size)});
    return out;
  }
  for (int v = 0; v < p.vertex_count(); ++v) {
    ++out.checked;
    fail("restriction", "id:" + p.vertex_name(v), vertex_matrix(p, rep_small, v) - vertex_matrix(p, rep_big, v), rep_big.variables);
  }
  for (int g = 0; g < p.generator_count(); ++g) {
    if (p.level(g) >= k) continue;
    ++out.checked;
    fail("restriction", p.name(g), generator_matrix(p, rep_small, g) - generator_matrix(p, rep_big, g), rep_big.variables);
  }
  std::set<int> small_levels, big_levels;
  for (int j = 0; j < k; ++j) small_levels.insert(j);
  for (int j = 0; j <= k; ++j) big_levels.insert(j);
  for (const auto& f : verify_ck(p, rep_small, small_levels).failures) out.failures.push_back({"precondition", "small " + f.relation + " " + f.instance, f.residual});
  for (const auto& f : verify_ck(p, rep_big, big_levels).failures) out.failures.push_back({"precondition", "big " + f.relation + " " + f.instance, f.residual});
  if (!out.passed()) return out;

  const auto& vars = rep_big.variables;
  Sampler s(p, k, rep_small, opt.seed);
  for (std::size_t i = 0; i < opt.samples; ++i) {
    std::string tag = "sample " + std::to_string(i);
    XElement x = s.element(), y = s.element();
    AlgebraElement a = s.algebra();
    out.checked += 4;
    if (!x_well_formed(p, x, rep_small)) out.failures.push_back({"module", tag, "T_s(a) x(a) != x(a)"});
    LaurentMatrix pa_small = image(p, rep_small, a), pa_big = image(p, rep_big, a);
    fail("(i)", tag, x_psi(p, x_right_act(x, pa_small), rep_big) - x_psi(p, x, rep_big) * pa_big, vars);
    fail("(ii)", tag, x_psi(p, act(p, a, x), rep_big) - pa_big * x_psi(p, x, rep_big), vars);
    fail("(iii)", tag, x_psi(p, x, rep_big).adjoint() * x_psi(p, y, rep_big) - x_inner(x, y, rep_small), vars);
  }
  // (iv) covariance at k-regular vertices.
  for (int v : katsura_vertices(p, k)) {
    ++out.checked;
    LaurentMatrix sum = rep_big.zero();
    for (int a : p.generators_into(k, v)) {
      LaurentMatrix m = x_psi(p, x_delta(p, a, rep_small), rep_big);
      sum = sum + m * m.adjoint();
    }
    fail("(iv)", "id:" + p.vertex_name(v), sum - vertex_matrix(p, rep_big, v), vars);
  }
  return out;
}

}  // namespace ordgraph
