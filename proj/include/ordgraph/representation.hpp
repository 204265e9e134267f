#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ordgraph/laurent.hpp"
#include "ordgraph/patheng.hpp"

namespace ordgraph {

class RepError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Matrices for vertices and generators, keyed by name.
struct Representation {
  std::size_t size = 0;
  std::vector<std::string> variables;
  std::map<std::string, LaurentMatrix> assign;

  bool has(const std::string& name) const { return assign.count(name) != 0; }
  const LaurentMatrix& at(const std::string& name) const;
  LaurentMatrix zero() const { return LaurentMatrix(size); }
};

Representation parse_representation_json(const std::string& text);
Representation load_representation_file(const std::string& path);
std::string representation_to_json(const Representation& rep);

LaurentMatrix vertex_matrix(const Presentation& p, const Representation& rep, int v);
LaurentMatrix generator_matrix(const Presentation& p, const Representation& rep, int g);
// Product of generator matrices along a path; the vertex matrix for an empty word.
LaurentMatrix path_matrix(const Presentation& p, const Representation& rep, const Path& a);

struct RelationFailure {
  std::string relation;  // "(1)", "(2)", "(3)", "(4)", "projection"
  std::string instance;
  std::string residual;
};

struct RelationReport {
  std::size_t checked = 0;
  std::vector<RelationFailure> failures;
  bool passed() const { return failures.empty(); }
};

// Relations (1)-(4) over the generators of the selected levels (all levels when absent) and all vertices.
RelationReport verify_ck(const Presentation& p, const Representation& rep, const std::optional<std::set<int>>& levels = std::nullopt,
                         bool parallel = false);

// Vertices and generators of level < k only.
Representation restrict_representation(const Presentation& p, const Representation& rep, int k);

// Vertices that are k-regular.
std::vector<int> katsura_vertices(const Presentation& p, int k);
// Whether T_p T_q^* lies in the span generating the Katsura ideal at level k.
bool ideal_span_member(const Presentation& p, const Path& pp, const Path& qq, int k);

}  // namespace ordgraph
