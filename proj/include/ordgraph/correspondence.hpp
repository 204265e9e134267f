#pragma once

#include <cstdint>
#include <map>

#include "ordgraph/representation.hpp"

namespace ordgraph {

// Finitely supported x : Lambda^{w^k} -> O(Lambda_k), stored through a representation of O(Lambda_k).
struct XElement {
  int level = 0;
  std::map<int, LaurentMatrix> values;  // generator id -> matrix
};

XElement x_delta(const Presentation& p, int a, const Representation& rep);
LaurentMatrix x_inner(const XElement& x, const XElement& y, const Representation& rep);
XElement x_right_act(const XElement& x, const LaurentMatrix& m);
// phi(T_g) x for a path g in Lambda_k.
XElement x_left_act(const Presentation& p, const Path& g, const XElement& x);
// phi(T_g)^* x.
XElement x_left_act_adjoint(const Presentation& p, const Path& g, const XElement& x);
XElement x_add(const XElement& x, const XElement& y);
LaurentMatrix x_psi(const Presentation& p, const XElement& x, const Representation& rep_big);
// Whether T_{s(a)} x(a) = x(a) for every a in the support.
bool x_well_formed(const Presentation& p, const XElement& x, const Representation& rep);

struct CorrespondenceOptions {
  std::size_t samples = 25;
  std::uint64_t seed = 1;
};

// Identities (i)-(iv) on random elements, after checking that rep_small is the restriction of rep_big.
RelationReport verify_correspondence(const Presentation& p, int k, const Representation& rep_small, const Representation& rep_big,
                                     const CorrespondenceOptions& opt = {});

}  // namespace ordgraph
