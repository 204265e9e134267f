#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ordgraph/epseq.hpp"
#include "ordgraph/patheng.hpp"

namespace ordgraph {

// Element of Lambda* in the eventually periodic class.
// Finite: a path, L = d + 1.
// Infinite: high . s0 . s1 ..., where `high` has only levels > K and (s_i) is an eventually periodic
// sequence of level-K generators; L = d(high) + w^(K+1).
class StarPath {
 public:
  static StarPath finite(Path path);
  static StarPath infinite(Path high, int level, EPSeq<int> seq);

  bool is_finite() const { return finite_; }
  const Path& path() const { return path_; }  // the finite path, or `high` when infinite
  const Path& high() const { return path_; }
  int level() const { return level_; }
  const EPSeq<int>& seq() const { return seq_; }
  int range() const { return path_.base; }

  friend bool operator==(const StarPath& a, const StarPath& b);
  friend bool operator<(const StarPath& a, const StarPath& b);

 private:
  bool finite_ = true;
  Path path_;
  int level_ = 0;
  EPSeq<int> seq_;
};

Ordinal star_length(const Presentation& p, const StarPath& f);
Path star_head(const Presentation& p, const StarPath& f, const Ordinal& beta);
StarPath star_tail(const Presentation& p, const StarPath& f, const Ordinal& beta);
StarPath star_compose(const Presentation& p, const Path& e, const StarPath& f);
// True iff f = e g for some g in Lambda*.
bool star_divides(const Presentation& p, const Path& e, const StarPath& f);

StarPath omega_power(const Presentation& p, const Path& h);

// Positions below L(f) at which heads and tails take all their values.
std::vector<Ordinal> star_positions(const Presentation& p, const StarPath& f);

bool is_boundary(const Presentation& p, const StarPath& f);
StarPath maximal_extension(const Presentation& p, int v);
std::vector<StarPath> enumerate_boundary(const Presentation& p, int v, std::size_t prefix_bound, std::size_t cycle_bound);

std::optional<unsigned long> fixed_by_loop(const Presentation& p, const Path& h, const StarPath& g);

// "e.f.(g)^w", "(g)^w", or a finite path literal.
StarPath parse_star(const Presentation& p, const std::string& text);
std::string format_star(const Presentation& p, const StarPath& f);

// All normal words of the given length with range v (v < 0: any range), optionally closed loops.
std::vector<Path> normal_words(const Presentation& p, int v, std::size_t length, bool loops_only = false);

}  // namespace ordgraph
