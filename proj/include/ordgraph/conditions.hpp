#pragma once

#include <optional>
#include <vector>

#include "ordgraph/patheng.hpp"

namespace ordgraph {

// {s(e) : e in v Lambda_k}, ascending vertex ids.
std::vector<int> reachable(const Presentation& p, int v, int k);

struct RegularityReport {
  int vertex = -1;
  int level = 0;
  bool source_regular = false;
  std::size_t row_count = 0;
  bool regular = false;
};

RegularityReport regularity(const Presentation& p, int v, int k);
bool is_regular(const Presentation& p, int v, int k);

struct ConditionCWitness {
  int level = 0;
  int atom = -1;
  Path word;  // nonempty loop of lower levels with word . atom = atom
};

std::optional<ConditionCWitness> condition_c(const Presentation& p);

// Vertex partition by s(u) ~ r(u) over generators of level < k. Each block ascending by name; blocks ordered by first name.
std::vector<std::vector<int>> components(const Presentation& p, int k);

// Throws std::invalid_argument unless d(e) = w^k * n with n >= 1.
bool non_returning(const Presentation& p, const Path& e);
bool alpha_full(const Presentation& p, const Path& e, int k);

struct ConditionSResult {
  bool verified = false;
  unsigned long n = 0;  // verified_up_to(n), or the failing n
  int level = 0;
  std::vector<int> component;
};

unsigned long default_max_n(const Presentation& p);
ConditionSResult condition_s(const Presentation& p, unsigned long max_n, unsigned long slack = 2, bool parallel = false);

}  // namespace ordgraph
