#include "ordgraph/representation.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <future>
#include <sstream>

#include <json.hpp>

#include "ordgraph/conditions.hpp"

namespace ordgraph {

using nlohmann::json;

const LaurentMatrix& Representation::at(const std::string& name) const {
  auto it = assign.find(name);
  if (it == assign.end()) throw RepError("representation has no matrix for '" + name + "'");
  return it->second;
}

Representation parse_representation_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw RepError(std::string("representation is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw RepError("representation must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "size" && it.key() != "variables" && it.key() != "assign") throw RepError("unknown key '" + it.key() + "'");
  if (!j.contains("size") || !j["size"].is_number_unsigned() || j["size"].get<std::size_t>() == 0)
    throw RepError("'size' must be a positive integer");
  Representation rep;
  rep.size = j["size"].get<std::size_t>();
  if (j.contains("variables")) {
    if (!j["variables"].is_array()) throw RepError("'variables' must be a list");
    for (const auto& v : j["variables"]) {
      if (!v.is_string() || !valid_identifier(v.get<std::string>()) || v.get<std::string>() == "i")
        throw RepError("bad variable name " + v.dump());
      rep.variables.push_back(v.get<std::string>());
    }
  }
  if (!j.contains("assign") || !j["assign"].is_object()) throw RepError("'assign' must be an object");
  for (auto it = j["assign"].begin(); it != j["assign"].end(); ++it) {
    const auto& rows = it.value();
    if (!rows.is_array() || rows.size() != rep.size) throw RepError("matrix for '" + it.key() + "' must have " + std::to_string(rep.size) + " rows");
    LaurentMatrix m(rep.size);
    for (std::size_t r = 0; r < rep.size; ++r) {
      if (!rows[r].is_array() || rows[r].size() != rep.size) throw RepError("row " + std::to_string(r) + " of '" + it.key() + "' has the wrong length");
      for (std::size_t c = 0; c < rep.size; ++c) {
        const auto& e = rows[r][c];
        std::string s;
        if (e.is_string()) s = e.get<std::string>();
        else if (e.is_number_integer()) s = std::to_string(e.get<long long>());
        else throw RepError("entry (" + std::to_string(r) + "," + std::to_string(c) + ") of '" + it.key() + "' must be a string");
        try {
          m.at(r, c) = parse_laurent(s, rep.variables);
        } catch (const LaurentError& err) {
          throw RepError("'" + it.key() + "': " + err.what());
        }
      }
    }
    rep.assign.emplace(it.key(), std::move(m));
  }
  return rep;
}

Representation load_representation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw RepError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_representation_json(ss.str());
}

std::string representation_to_json(const Representation& rep) {
  json j;
  j["size"] = rep.size;
  j["variables"] = rep.variables;
  json a = json::object();
  for (const auto& [name, m] : rep.assign) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.size(); ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < m.size(); ++c) row.push_back(format(m.at(r, c), rep.variables));
      rows.push_back(row);
    }
    a[name] = rows;
  }
  j["assign"] = a;
  return j.dump(2);
}

LaurentMatrix vertex_matrix(const Presentation& p, const Representation& rep, int v) { return rep.at(p.vertex_name(v)); }

LaurentMatrix generator_matrix(const Presentation& p, const Representation& rep, int g) { return rep.at(p.name(g)); }

LaurentMatrix path_matrix(const Presentation& p, const Representation& rep, const Path& a) {
  if (a.word.empty()) return vertex_matrix(p, rep, a.base);
  LaurentMatrix m = generator_matrix(p, rep, a.word[0]);
  for (std::size_t i = 1; i < a.word.size(); ++i) m = m * generator_matrix(p, rep, a.word[i]);
  return m;
}

namespace {

// A generator or a vertex, as an element of Lambda with degree < w^(K+1).
struct Item {
  bool vertex;
  int id;
};

using Check = std::function<std::optional<RelationFailure>()>;

}  // namespace

RelationReport verify_ck(const Presentation& p, const Representation& rep, const std::optional<std::set<int>>& levels, bool parallel) {
  auto selected = [&](int k) { return !levels || levels->count(k) != 0; };
  for (int v = 0; v < p.vertex_count(); ++v)
    if (p.find_generator(p.vertex_name(v))) throw RepError("name '" + p.vertex_name(v) + "' is both a vertex and a generator");

  std::vector<Item> items;
  for (int v = 0; v < p.vertex_count(); ++v) items.push_back({true, v});
  for (int g = 0; g < p.generator_count(); ++g)
    if (selected(p.level(g))) items.push_back({false, g});

  // Resolve every matrix up front so missing assignments surface as errors.
  std::vector<LaurentMatrix> mats;
  for (const auto& it : items) mats.push_back(it.vertex ? vertex_matrix(p, rep, it.id) : generator_matrix(p, rep, it.id));
  for (const auto& m : mats)
    if (m.size() != rep.size) throw RepError("matrix size mismatch in representation");
  std::vector<LaurentMatrix> vmat(mats.begin(), mats.begin() + p.vertex_count());
  auto name = [&](const Item& it) { return it.vertex ? "id:" + p.vertex_name(it.id) : p.name(it.id); };
  auto range = [&](const Item& it) { return it.vertex ? it.id : p.rng(it.id); };
  auto source = [&](const Item& it) { return it.vertex ? it.id : p.src(it.id); };
  auto path = [&](const Item& it) { return it.vertex ? vertex_path(it.id) : Path{p.rng(it.id), {it.id}}; };
  auto residual = [&](const char* rel, std::string inst, const LaurentMatrix& r) -> std::optional<RelationFailure> {
    if (r.is_zero()) return std::nullopt;
    return RelationFailure{rel, std::move(inst), format(r, rep.variables)};
  };

  std::vector<Check> checks;
  // Vertex projections: self-adjoint idempotents.
  for (int v = 0; v < p.vertex_count(); ++v) {
    checks.push_back([&, v] {
      const auto& P = vmat[static_cast<std::size_t>(v)];
      if (auto f = residual("projection", "id:" + p.vertex_name(v) + " self-adjoint", P - P.adjoint())) return f;
      return residual("projection", "id:" + p.vertex_name(v) + " idempotent", P * P - P);
    });
  }
  // (1) T_x^* T_x = T_s(x).
  for (std::size_t i = 0; i < items.size(); ++i) {
    checks.push_back([&, i] {
      const auto& m = mats[i];
      return residual("(1)", name(items[i]), m.adjoint() * m - vmat[static_cast<std::size_t>(source(items[i]))]);
    });
  }
  // (2) T_x T_y = T_xy when s(x) = r(y) and d(x) < d(y).
  for (std::size_t i = 0; i < items.size(); ++i) {
    for (std::size_t j = 0; j < items.size(); ++j) {
      const Item &x = items[i], &y = items[j];
      if (y.vertex || source(x) != range(y)) continue;
      if (!x.vertex && p.level(x.id) >= p.level(y.id)) continue;
      int xy = y.id;
      if (!x.vertex) {
        auto r = p.prepend(x.id, y.id);
        if (!r) continue;
        xy = *r;
      }
      if (!selected(p.level(xy))) continue;
      checks.push_back([&, i, j, xy] {
        return residual("(2)", name(items[i]) + " * " + name(items[j]), mats[i] * mats[j] - generator_matrix(p, rep, xy));
      });
    }
  }
  // (3) T_x^* T_y = 0 when x Lambda and y Lambda are disjoint.
  for (std::size_t i = 0; i < items.size(); ++i) {
    for (std::size_t j = 0; j < items.size(); ++j) {
      if (i == j) continue;
      Path a = path(items[i]), b = path(items[j]);
      if (divides(p, a, b) || divides(p, b, a)) continue;
      checks.push_back([&, i, j] {
        return residual("(3)", name(items[i]) + "^* " + name(items[j]), mats[i].adjoint() * mats[j]);
      });
    }
  }
  // (4) T_v = sum of T_a T_a^* over level-k generators with range v, at k-regular v.
  for (int k = 0; k <= p.max_level(); ++k) {
    if (!selected(k)) continue;
    for (int v = 0; v < p.vertex_count(); ++v) {
      if (!is_regular(p, v, k)) continue;
      checks.push_back([&, k, v] {
        LaurentMatrix sum(rep.size);
        for (int a : p.generators_into(k, v)) {
          const auto& m = generator_matrix(p, rep, a);
          sum = sum + m * m.adjoint();
        }
        return residual("(4)", "id:" + p.vertex_name(v) + " at level " + std::to_string(k), vmat[static_cast<std::size_t>(v)] - sum);
      });
    }
  }

  std::vector<std::optional<RelationFailure>> results(checks.size());
  if (parallel && checks.size() > 1) {
    std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(8, checks.size()));
    std::vector<std::future<void>> fut;
    for (std::size_t w = 0; w < workers; ++w)
      fut.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t i = w; i < checks.size(); i += workers) results[i] = checks[i]();
      }));
    for (auto& f : fut) f.get();
  } else {
    for (std::size_t i = 0; i < checks.size(); ++i) results[i] = checks[i]();
  }
  RelationReport rep_out;
  rep_out.checked = checks.size();
  for (auto& r : results)
    if (r) rep_out.failures.push_back(std::move(*r));
  return rep_out;
}

Representation restrict_representation(const Presentation& p, const Representation& rep, int k) {
  Representation out;
  out.size = rep.size;
  out.variables = rep.variables;
  for (int v = 0; v < p.vertex_count(); ++v) out.assign.emplace(p.vertex_name(v), vertex_matrix(p, rep, v));
  for (int g = 0; g < p.generator_count(); ++g)
    if (p.level(g) < k) out.assign.emplace(p.name(g), generator_matrix(p, rep, g));
  return out;
}

std::vector<int> katsura_vertices(const Presentation& p, int k) {
  std::vector<int> out;
  if (k < 0 || k > p.max_level()) return out;
  for (int v = 0; v < p.vertex_count(); ++v)
    if (regularity(p, v, k).regular) out.push_back(v);
  return out;
}

bool ideal_span_member(const Presentation& p, const Path& pp, const Path& qq, int k) {
  int s = path_source(p, pp);
  if (s != path_source(p, qq)) throw std::invalid_argument("ideal_span_member needs s(p) = s(q)");
  auto ks = katsura_vertices(p, k);
  return std::find(ks.begin(), ks.end(), s) != ks.end();
}

}  // namespace ordgraph
