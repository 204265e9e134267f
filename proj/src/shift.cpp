#include "ordgraph/shift.hpp"

#include <algorithm>

namespace ordgraph {

namespace {

long small_long(const mpz_class& n) {
  if (!n.fits_slong_p()) throw ShiftError("shift value does not fit in a machine integer");
  return n.get_si();
}

// Coefficient of w^k in a < w^(k+1).
mpz_class level_coefficient(const Ordinal& a, int k) {
  DivMod dm = divmod_omega(a, Ordinal(static_cast<unsigned long>(k)));
  if (dm.overflow()) throw std::logic_error("position beyond w^(k+1)");
  return *dm.quotient;
}

}  // namespace

std::optional<CancellativityWitness> is_cancellative(const Presentation& p, const StarPath& f, int k) {
  Ordinal top = level_degree(k + 1);
  Ordinal L = star_length(p, f);
  if (L < top) return std::nullopt;
  StarPath g = L > top ? StarPath::finite(star_head(p, f, top)) : f;
  Ordinal unit = level_degree(k);
  std::vector<Ordinal> pos;
  for (const auto& x : star_positions(p, g))
    if (x < top) pos.push_back(x);
  std::vector<StarPath> tails;
  tails.reserve(pos.size());
  for (const auto& x : pos) tails.push_back(star_tail(p, g, x));
  for (std::size_t b = 0; b < pos.size(); ++b)
    for (std::size_t e = 0; e <= b; ++e)
      if (pos[e] + unit <= pos[b] && tails[e] == tails[b]) return CancellativityWitness{pos[e], pos[b]};
  return std::nullopt;
}

bool check_witness(const Presentation& p, const StarPath& f, int k, const CancellativityWitness& w) {
  Ordinal top = level_degree(k + 1);
  if (!(w.epsilon <= w.beta) || !(w.beta < top) || !(w.epsilon + level_degree(k) <= w.beta)) return false;
  if (!(w.beta < star_length(p, f))) return false;
  return star_tail(p, f, w.epsilon) == star_tail(p, f, w.beta);
}

StarPath class_representative(const Presentation& p, const StarPath& f) {
  if (f.is_finite()) throw std::invalid_argument("class_representative needs an infinite star path");
  std::vector<int> best = f.seq().cycle;
  std::vector<int> rot = best;
  for (std::size_t i = 1; i < rot.size(); ++i) {
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    if (rot < best) best = rot;
  }
  return StarPath::infinite(vertex_path(p.rng(best[0])), f.level(), EPSeq<int>({}, best));
}

long shift_v(const Presentation& p, const StarPath& f, int k) {
  Ordinal top = level_degree(k + 1);
  if (f.is_finite()) {
    Ordinal d = degree(p, f.path());
    if (d < top) return small_long(level_coefficient(d, k));
  } else if (star_length(p, f) < top) {
    // f(gamma)^-1 f = c(f)(beta)^-1 c(f) with gamma in the periodic part of f and beta inside one period of c(f).
    StarPath c = class_representative(p, f);
    Ordinal dh = degree(p, f.high());
    Ordinal unit(static_cast<unsigned long>(f.level()));
    std::size_t period = c.seq().cycle.size();
    for (std::size_t j = 0; j <= f.seq().window(); ++j) {
      Ordinal gamma = dh + omega_term(unit, mpz_class(static_cast<unsigned long>(j)));
      StarPath t = star_tail(p, f, gamma);
      for (std::size_t i = 0; i < period; ++i) {
        Ordinal beta = omega_term(unit, mpz_class(static_cast<unsigned long>(i)));
        if (star_tail(p, c, beta) == t) return small_long(level_coefficient(gamma, k) - level_coefficient(beta, k));
      }
    }
    throw std::logic_error("no matching tail for the class representative");
  }
  auto w = is_cancellative(p, f, k);
  if (!w) throw std::logic_error("cancellative star path outside the supported fragment");
  throw ShiftError("v(f)_" + std::to_string(k) + " undefined: f is not " + std::to_string(k) + "-cancellative (epsilon=" + format(w->epsilon) +
                   ", beta=" + format(w->beta) + ")");
}

long shift_v_extended(const Presentation& p, const StarPath& f, int k) {
  try {
    return shift_v(p, f, k);
  } catch (const ShiftError&) {
    return 0;
  }
}

}  // namespace ordgraph
