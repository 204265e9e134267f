#pragma once

#include <optional>
#include <stdexcept>

#include "ordgraph/boundary.hpp"

namespace ordgraph {

// f(beta)^-1 f = f(epsilon)^-1 f with epsilon + w^k <= beta < w^(k+1).
struct CancellativityWitness {
  Ordinal epsilon;
  Ordinal beta;
};

class ShiftError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// nullopt when f is k-cancellative.
std::optional<CancellativityWitness> is_cancellative(const Presentation& p, const StarPath& f, int k);
bool check_witness(const Presentation& p, const StarPath& f, int k, const CancellativityWitness& w);

// v(f)_k. Throws ShiftError when f is not k-cancellative.
long shift_v(const Presentation& p, const StarPath& f, int k);
// shift_v, extended by 0 to non-cancellative f.
long shift_v_extended(const Presentation& p, const StarPath& f, int k);

// Least rotation of the primitive cycle of an infinite f, as a pure level-K sequence.
StarPath class_representative(const Presentation& p, const StarPath& f);

}  // namespace ordgraph
