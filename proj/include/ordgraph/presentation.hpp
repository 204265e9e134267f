#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ordgraph/epseq.hpp"

namespace ordgraph {

struct RawEdge {
  std::string name, src, rng;
};

struct RawAtom {
  std::string name;
  int level = 1;
  std::string src, rng;
  std::vector<std::string> prefix, cycle;
};

struct RawPrepend {
  int level = 1;
  std::string left, atom, result;
};

struct RawTail {
  int level = 1;
  std::string atom;
  unsigned long shift = 1;
  std::string result;
};

// Unchecked presentation data, as read from a file or produced by a generator.
struct RawPresentation {
  std::vector<std::string> vertices;
  std::vector<RawEdge> edges;
  std::vector<RawAtom> atoms;
  std::vector<RawPrepend> prepends;
  std::vector<RawTail> tails;
};

// Edges are generators of level 0; atoms have level >= 1.
struct Generator {
  std::string name;
  int level = 0;
  int src = -1;
  int rng = -1;
  EPSeq<int> lasso;  // atoms only
};

struct ValidationIssue {
  std::string check;  // "totality", "left-cancellation", "lasso", "tail-closure", "coherence", "tail-consistency"
  std::string message;
  std::string witness;
};

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<ValidationIssue> issues);
  const std::vector<ValidationIssue>& issues() const { return issues_; }

 private:
  std::vector<ValidationIssue> issues_;
};

class Presentation {
 public:
  // Resolves names and derives tail data; throws SchemaError on structural problems.
  static Presentation build(const RawPresentation& raw);

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  const std::string& vertex_name(int v) const { return vertices_.at(static_cast<std::size_t>(v)); }
  std::optional<int> find_vertex(const std::string& name) const;
  int vertex(const std::string& name) const;

  int generator_count() const { return static_cast<int>(gens_.size()); }
  const Generator& gen(int id) const { return gens_.at(static_cast<std::size_t>(id)); }
  const std::string& name(int id) const { return gen(id).name; }
  int level(int id) const { return gen(id).level; }
  int src(int id) const { return gen(id).src; }
  int rng(int id) const { return gen(id).rng; }
  std::optional<int> find_generator(const std::string& name) const;
  int generator(const std::string& name) const;

  // Highest level present (0 for a directed graph).
  int max_level() const { return static_cast<int>(by_level_.size()) - 1; }
  // Generators of level k in declaration order.
  const std::vector<int>& level_generators(int k) const;
  // Level-k generators with the given range.
  std::vector<int> generators_into(int k, int v) const;

  std::optional<int> prepend(int u, int a) const;
  // The atom obtained by shifting a one lasso step, if determined.
  std::optional<int> next(int a) const;
  // Sequence j -> next^j(a); nullopt when some step is undetermined.
  const std::optional<EPSeq<int>>& orbit(int a) const;
  int tail_at(int a, const mpz_class& j) const;
  // prepend(word[0], prepend(word[1], ... prepend(word.back(), a))).
  std::optional<int> fold_prepend(const std::vector<int>& word, int a) const;

  const RawPresentation& raw() const { return raw_; }
  const std::vector<std::pair<std::pair<int, int>, int>>& prepend_entries() const { return prepend_list_; }
  const std::map<std::pair<int, unsigned long>, int>& explicit_tails() const { return tails_; }

 private:
  RawPresentation raw_;
  std::vector<std::string> vertices_;
  std::map<std::string, int> vertex_ids_;
  std::vector<Generator> gens_;
  std::map<std::string, int> gen_ids_;
  std::vector<std::vector<int>> by_level_;
  std::map<std::pair<int, int>, int> prepend_;
  std::vector<std::pair<std::pair<int, int>, int>> prepend_list_;
  std::map<std::pair<int, unsigned long>, int> tails_;
  std::vector<std::optional<int>> next_;
  std::vector<std::optional<EPSeq<int>>> orbit_;
  std::vector<std::string> next_problem_;

  friend std::vector<ValidationIssue> validate(const Presentation& p);
};

std::vector<ValidationIssue> validate(const Presentation& p);

// Build and validate; throws SchemaError or ValidationError.
Presentation load_presentation(const RawPresentation& raw);
RawPresentation parse_presentation_json(const std::string& text);
Presentation load_presentation_text(const std::string& text);
Presentation load_presentation_file(const std::string& path);
std::string presentation_to_json(const RawPresentation& raw);

bool valid_identifier(const std::string& s);

}  // namespace ordgraph
