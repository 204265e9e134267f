#include "ordgraph/actions.hpp"

#include "ordgraph/conditions.hpp"
#include "ordgraph/shift.hpp"

namespace ordgraph {

namespace {

Path gen_path(const Presentation& p, int g) { return Path{p.rng(g), {g}}; }

}  // namespace

std::optional<StarPath> tau_apply(const Presentation& p, int gen, const StarPath& f) {
  if (p.src(gen) != f.range()) return std::nullopt;
  return star_compose(p, gen_path(p, gen), f);
}

std::optional<StarPath> tau_adjoint(const Presentation& p, int gen, const StarPath& f) {
  Path e = gen_path(p, gen);
  if (!star_divides(p, e, f)) return std::nullopt;
  return star_tail(p, f, degree(p, e));
}

std::optional<StarPath> tau_vertex(const Presentation&, int v, const StarPath& f) {
  if (f.range() != v) return std::nullopt;
  return f;
}

namespace {

// Checks relations (1)-(4) for a family of partial injections on a sample set.
template <class X, class Ops>
void check_relations(const Presentation& p, const std::vector<X>& samples, const Ops& ops, RelationReport& out) {
  auto fail = [&](const char* rel, std::string inst, std::string detail) {
    out.failures.push_back({rel, std::move(inst), std::move(detail)});
  };
  auto same = [](const std::optional<X>& a, const std::optional<X>& b) { return a.has_value() == b.has_value() && (!a || *a == *b); };
  for (const auto& x : samples) {
    std::string sx = ops.show(x);
    int r = ops.range(x);
    for (int v = 0; v < p.vertex_count(); ++v) {
      ++out.checked;
      auto y = ops.vertex(v, x);
      if (y.has_value() != (v == r) || (y && !(*y == x))) fail("projection", "id:" + p.vertex_name(v) + " on " + sx, "vertex projection is not the range indicator");
    }
    for (int g = 0; g < p.generator_count(); ++g) {
      ++out.checked;
      auto y = ops.apply(g, x);
      if (y.has_value() != (p.src(g) == r)) {
        fail("(1)", p.name(g) + " on " + sx, "domain differs from the source projection");
        continue;
      }
      if (y) {
        auto back = ops.adjoint(g, *y);
        if (!back || !(*back == x)) fail("(1)", p.name(g) + " on " + sx, "adjoint does not invert");
      }
      auto c = ops.adjoint(g, x);
      if (c) {
        auto again = ops.apply(g, *c);
        if (!again || !(*again == x)) fail("coherence", p.name(g) + "^* on " + sx, "range projection does not fix the vector");
      }
    }
    for (int g = 0; g < p.generator_count(); ++g) {
      for (int h = 0; h < p.generator_count(); ++h) {
        if (p.src(g) == p.rng(h) && p.level(g) < p.level(h)) {
          auto gh = p.prepend(g, h);
          if (!gh) continue;
          ++out.checked;
          auto hx = ops.apply(h, x);
          std::optional<X> lhs = hx ? ops.apply(g, *hx) : std::nullopt;
          if (!same(lhs, ops.apply(*gh, x))) fail("(2)", p.name(g) + " * " + p.name(h) + " on " + sx, "product differs from " + p.name(*gh));
        }
        if (g == h) continue;
        Path a = gen_path(p, g), b = gen_path(p, h);
        if (a.base == b.base && (divides(p, a, b) || divides(p, b, a))) continue;
        ++out.checked;
        auto hx = ops.apply(h, x);
        if (hx && ops.adjoint(g, *hx)) fail("(3)", p.name(g) + "^* " + p.name(h) + " on " + sx, "disjoint generators overlap");
      }
    }
    for (int k = 0; k <= p.max_level(); ++k) {
      if (!ops.regular(r, k)) continue;
      ++out.checked;
      int hits = 0;
      for (int a : p.generators_into(k, r)) {
        auto c = ops.adjoint(a, x);
        if (!c) continue;
        ++hits;
        auto back = ops.apply(a, *c);
        if (!back || !(*back == x)) fail("(4)", p.name(a) + " at " + sx, "range projection does not fix the vector");
      }
      if (hits != 1)
        fail("(4)", "id:" + p.vertex_name(r) + " at level " + std::to_string(k) + " on " + sx, std::to_string(hits) + " range projections contain the vector");
    }
  }
}

class RegularCache {
 public:
  explicit RegularCache(const Presentation& p) : p_(p) {}
  bool operator()(int v, int k) const {
    auto key = std::make_pair(v, k);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    return memo_[key] = is_regular(p_, v, k);
  }

 private:
  const Presentation& p_;
  mutable std::map<std::pair<int, int>, bool> memo_;
};

}  // namespace

RelationReport verify_tau(const Presentation& p, const std::vector<StarPath>& samples) {
  RegularCache reg(p);
  struct Ops {
    const Presentation& p;
    const RegularCache& reg;
    std::optional<StarPath> apply(int g, const StarPath& f) const { return tau_apply(p, g, f); }
    std::optional<StarPath> adjoint(int g, const StarPath& f) const { return tau_adjoint(p, g, f); }
    std::optional<StarPath> vertex(int v, const StarPath& f) const { return tau_vertex(p, v, f); }
    int range(const StarPath& f) const { return f.range(); }
    bool regular(int v, int k) const { return reg(v, k); }
    std::string show(const StarPath& f) const { return format_star(p, f); }
  } ops{p, reg};
  RelationReport out;
  check_relations(p, samples, ops, out);
  return out;
}

ShiftRep::ShiftRep(const Presentation& p, int zeta) : p_(p), zeta_(zeta) {
  if (zeta < 0 || zeta > p.max_level() + 1) throw std::invalid_argument("zeta must lie in [0, K+1]");
}

long ShiftRep::v(const StarPath& f, int k) const {
  auto key = std::make_pair(f, k);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  long val = shift_v_extended(p_, f, k);
  cache_.emplace(key, val);
  return val;
}

bool ShiftRep::in_gauge_space(const StarPath& f, int k) const {
  Ordinal L = star_length(p_, f);
  for (int b = k; b < zeta_; ++b)
    if (L > level_degree(b + 1) && is_cancellative(p_, f, b).has_value()) return false;  // witness: not b-cancellative
  return true;
}

std::optional<ShiftBasisVector> ShiftRep::apply(int gen, const ShiftBasisVector& b) const {
  if (p_.src(gen) != b.f.range()) return std::nullopt;
  StarPath e = StarPath::finite(gen_path(p_, gen));
  StarPath ef = star_compose(p_, gen_path(p_, gen), b.f);
  Ordinal L = star_length(p_, ef);
  ShiftBasisVector out{ef, b.n};
  for (int k = 0; k < zeta_; ++k) {
    auto i = static_cast<std::size_t>(k);
    if (L <= level_degree(k + 1)) out.n[i] += v(e, k);
    else out.n[i] += v(ef, k) - v(b.f, k);
  }
  return out;
}

std::optional<ShiftBasisVector> ShiftRep::adjoint(int gen, const ShiftBasisVector& b) const {
  Path e = gen_path(p_, gen);
  if (!star_divides(p_, e, b.f)) return std::nullopt;
  StarPath rest = star_tail(p_, b.f, degree(p_, e));
  Ordinal L = star_length(p_, b.f);
  ShiftBasisVector out{rest, b.n};
  for (int k = 0; k < zeta_; ++k) {
    auto i = static_cast<std::size_t>(k);
    if (L <= level_degree(k + 1)) out.n[i] -= v(StarPath::finite(e), k);
    else out.n[i] += v(rest, k) - v(b.f, k);
  }
  return out;
}

std::optional<ShiftBasisVector> ShiftRep::vertex(int v, const ShiftBasisVector& b) const {
  if (b.f.range() != v) return std::nullopt;
  return b;
}

std::optional<ShiftBasisVector> pi_apply(const Presentation& p, int gen, const ShiftBasisVector& b, int zeta) {
  return ShiftRep(p, zeta).apply(gen, b);
}

std::string format_basis(const Presentation& p, const ShiftBasisVector& b) {
  std::string s = "(" + format_star(p, b.f) + "; ";
  for (std::size_t i = 0; i < b.n.size(); ++i) s += (i ? "," : "") + std::to_string(b.n[i]);
  return s + ")";
}

RelationReport verify_pi(const Presentation& p, const std::vector<ShiftBasisVector>& samples, int zeta) {
  ShiftRep rep(p, zeta);
  for (const auto& b : samples)
    if (b.n.size() != static_cast<std::size_t>(zeta)) throw std::invalid_argument("basis vector has the wrong number of levels");
  RegularCache reg(p);
  struct Ops {
    const Presentation& p;
    const ShiftRep& rep;
    const RegularCache& reg;
    std::optional<ShiftBasisVector> apply(int g, const ShiftBasisVector& b) const { return rep.apply(g, b); }
    std::optional<ShiftBasisVector> adjoint(int g, const ShiftBasisVector& b) const { return rep.adjoint(g, b); }
    std::optional<ShiftBasisVector> vertex(int v, const ShiftBasisVector& b) const { return rep.vertex(v, b); }
    int range(const ShiftBasisVector& b) const { return b.f.range(); }
    bool regular(int v, int k) const { return reg(v, k); }
    std::string show(const ShiftBasisVector& b) const { return format_basis(p, b); }
  } ops{p, rep, reg};
  RelationReport out;
  check_relations(p, samples, ops, out);

  // Ad U_z pi(T_g) = z^(m_k - n_k) pi(T_g) must equal pi(Gamma_{k,z}(T_g)) = z^[level(g) = k] pi(T_g) on H_k.
  for (int k = 0; k < zeta; ++k) {
    auto i = static_cast<std::size_t>(k);
    for (const auto& b : samples) {
      if (!rep.in_gauge_space(b.f, k)) continue;
      for (int g = 0; g < p.generator_count(); ++g) {
        if (p.level(g) > k) continue;
        auto y = rep.apply(g, b);
        if (!y) continue;
        ++out.checked;
        LaurentScalar lhs = LaurentScalar::variable(0, static_cast<int>(y->n[i] - b.n[i]));
        LaurentScalar rhs = LaurentScalar::variable(0, p.level(g) == k ? 1 : 0);
        std::string inst = p.name(g) + " on " + format_basis(p, b) + " at level " + std::to_string(k);
        if (!(lhs == rhs)) out.failures.push_back({"gauge", inst, format(lhs - rhs, {"z"})});
        if (!rep.in_gauge_space(y->f, k)) out.failures.push_back({"gauge", inst, "image leaves H_" + std::to_string(k)});
      }
    }
  }
  return out;
}

}  // namespace ordgraph

namespace ordgraph {

std::vector<StarPath> boundary_samples(const Presentation& p, std::size_t prefix_bound, std::size_t cycle_bound) {
  std::vector<StarPath> out;
  for (int v = 0; v < p.vertex_count(); ++v)
    for (auto& f : enumerate_boundary(p, v, prefix_bound, cycle_bound)) out.push_back(std::move(f));
  return out;
}

std::vector<ShiftBasisVector> shift_samples(const std::vector<StarPath>& paths, int zeta, long radius) {
  std::vector<ShiftBasisVector> out;
  std::vector<long> n(static_cast<std::size_t>(zeta), -radius);
  for (const auto& f : paths) {
    std::fill(n.begin(), n.end(), -radius);
    while (true) {
      out.push_back({f, n});
      std::size_t i = 0;
      while (i < n.size() && n[i] == radius) n[i++] = -radius;
      if (i == n.size()) break;
      ++n[i];
    }
  }
  return out;
}

}  // namespace ordgraph
