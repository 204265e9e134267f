#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ordgraph/boundary.hpp"
#include "ordgraph/representation.hpp"

namespace ordgraph {

// Boundary representation on basis vectors xi_f: partial injections of the sample space.
std::optional<StarPath> tau_apply(const Presentation& p, int gen, const StarPath& f);
std::optional<StarPath> tau_adjoint(const Presentation& p, int gen, const StarPath& f);
std::optional<StarPath> tau_vertex(const Presentation& p, int v, const StarPath& f);

RelationReport verify_tau(const Presentation& p, const std::vector<StarPath>& samples);

// xi_{f,n} with n indexed by levels 0..zeta-1.
struct ShiftBasisVector {
  StarPath f;
  std::vector<long> n;

  friend bool operator==(const ShiftBasisVector& a, const ShiftBasisVector& b) { return a.f == b.f && a.n == b.n; }
};

// Shift representation pi; caches shift values.
class ShiftRep {
 public:
  ShiftRep(const Presentation& p, int zeta);

  int zeta() const { return zeta_; }
  std::optional<ShiftBasisVector> apply(int gen, const ShiftBasisVector& b) const;
  std::optional<ShiftBasisVector> adjoint(int gen, const ShiftBasisVector& b) const;
  std::optional<ShiftBasisVector> vertex(int v, const ShiftBasisVector& b) const;
  long v(const StarPath& f, int k) const;
  // For each level b in [k, zeta): L(f) <= w^(b+1) or f is b-cancellative.
  bool in_gauge_space(const StarPath& f, int k) const;

 private:
  const Presentation& p_;
  int zeta_;
  mutable std::map<std::pair<StarPath, int>, long> cache_;
};

std::optional<ShiftBasisVector> pi_apply(const Presentation& p, int gen, const ShiftBasisVector& b, int zeta);

// Relations (1)-(4) pointwise plus gauge intertwining at every level below zeta.
RelationReport verify_pi(const Presentation& p, const std::vector<ShiftBasisVector>& samples, int zeta);

std::string format_basis(const Presentation& p, const ShiftBasisVector& b);

}  // namespace ordgraph

namespace ordgraph {

// Boundary paths from every vertex, ordered by vertex then by literal.
std::vector<StarPath> boundary_samples(const Presentation& p, std::size_t prefix_bound, std::size_t cycle_bound);
// Every f in paths paired with every n in [-radius, radius]^zeta.
std::vector<ShiftBasisVector> shift_samples(const std::vector<StarPath>& paths, int zeta, long radius);

}  // namespace ordgraph
