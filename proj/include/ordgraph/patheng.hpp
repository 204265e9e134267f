#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ordgraph/ordinal.hpp"
#include "ordgraph/presentation.hpp"

namespace ordgraph {

// Normal-form word. `base` is the range vertex (also the source when the word is empty).
struct Path {
  int base = -1;
  std::vector<int> word;

  bool empty() const { return word.empty(); }
  friend bool operator==(const Path& a, const Path& b) { return a.base == b.base && a.word == b.word; }
  friend bool operator<(const Path& a, const Path& b) {
    if (a.base != b.base) return a.base < b.base;
    return a.word < b.word;
  }
};

class PathError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Path vertex_path(int v);
int path_range(const Presentation& p, const Path& a);
int path_source(const Presentation& p, const Path& a);

Path normalize(const Presentation& p, const std::vector<int>& word, int base = -1);
Path compose(const Presentation& p, const Path& a, const Path& b);
Ordinal degree(const Presentation& p, const Path& a);
Ordinal level_degree(int k);

Path head(const Presentation& p, const Path& a, const Ordinal& beta);
Path tail(const Presentation& p, const Path& a, const Ordinal& beta);
bool divides(const Presentation& p, const Path& a, const Path& b);

// Head word of a single generator at 0 <= r <= d(x).
std::vector<int> generator_head(const Presentation& p, int x, const Ordinal& r);
// Tail generator of x at 0 < r < d(x).
int generator_tail(const Presentation& p, int x, const Ordinal& r);

// Positions inside a generator (excluding d(x)) at which heads and tails take all their values.
std::vector<Ordinal> generator_positions(const Presentation& p, int x);
// Whole-generator cuts plus the inner positions of every generator, ascending, including d(a).
std::vector<Ordinal> effective_positions(const Presentation& p, const Path& a);

// Least n > 0 with h^n g = g, if any.
std::optional<unsigned long> fixed_by_loop(const Presentation& p, const Path& h, const Path& g);

// "e.f.g" or "id:v".
Path parse_path(const Presentation& p, const std::string& text);
std::string format_path(const Presentation& p, const Path& a);
std::string format_word(const Presentation& p, const std::vector<int>& w);

}  // namespace ordgraph
