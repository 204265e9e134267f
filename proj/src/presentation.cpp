#include "ordgraph/presentation.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace ordgraph {

using nlohmann::json;

bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  auto head = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
  if (!head(s[0])) return false;
  for (char c : s)
    if (!(head(c) || (c >= '0' && c <= '9') || c == '\'')) return false;
  return true;
}

namespace {

std::string issues_text(const std::vector<ValidationIssue>& issues) {
  std::string out = "presentation failed validation";
  for (const auto& i : issues) out += "\n  [" + i.check + "] " + i.message + (i.witness.empty() ? "" : " (" + i.witness + ")");
  return out;
}

std::string word_text(const Presentation& p, const std::vector<int>& w) {
  std::string s;
  for (int g : w) s += (s.empty() ? "" : ".") + p.name(g);
  return s;
}

}  // namespace

ValidationError::ValidationError(std::vector<ValidationIssue> issues)
    : std::runtime_error(issues_text(issues)), issues_(std::move(issues)) {}

std::optional<int> Presentation::find_vertex(const std::string& name) const {
  auto it = vertex_ids_.find(name);
  if (it == vertex_ids_.end()) return std::nullopt;
  return it->second;
}

int Presentation::vertex(const std::string& name) const {
  auto v = find_vertex(name);
  if (!v) throw SchemaError("unknown vertex '" + name + "'");
  return *v;
}

std::optional<int> Presentation::find_generator(const std::string& name) const {
  auto it = gen_ids_.find(name);
  if (it == gen_ids_.end()) return std::nullopt;
  return it->second;
}

int Presentation::generator(const std::string& name) const {
  auto g = find_generator(name);
  if (!g) throw SchemaError("unknown generator '" + name + "'");
  return *g;
}

const std::vector<int>& Presentation::level_generators(int k) const {
  static const std::vector<int> none;
  if (k < 0 || k >= static_cast<int>(by_level_.size())) return none;
  return by_level_[static_cast<std::size_t>(k)];
}

std::vector<int> Presentation::generators_into(int k, int v) const {
  std::vector<int> out;
  for (int g : level_generators(k))
    if (rng(g) == v) out.push_back(g);
  return out;
}

std::optional<int> Presentation::prepend(int u, int a) const {
  auto it = prepend_.find({u, a});
  if (it == prepend_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Presentation::next(int a) const { return next_.at(static_cast<std::size_t>(a)); }

const std::optional<EPSeq<int>>& Presentation::orbit(int a) const { return orbit_.at(static_cast<std::size_t>(a)); }

int Presentation::tail_at(int a, const mpz_class& j) const {
  const auto& o = orbit(a);
  if (!o) throw std::logic_error("tail of atom '" + name(a) + "' is undetermined");
  return o->at(j);
}

std::optional<int> Presentation::fold_prepend(const std::vector<int>& word, int a) const {
  int cur = a;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    auto r = prepend(*it, cur);
    if (!r) return std::nullopt;
    cur = *r;
  }
  return cur;
}

Presentation Presentation::build(const RawPresentation& raw) {
  Presentation p;
  p.raw_ = raw;
  for (const auto& v : raw.vertices) {
    if (!valid_identifier(v)) throw SchemaError("invalid vertex name '" + v + "'");
    if (!p.vertex_ids_.emplace(v, static_cast<int>(p.vertices_.size())).second)
      throw SchemaError("duplicate vertex '" + v + "'");
    p.vertices_.push_back(v);
  }
  auto add_gen = [&](const std::string& name, int level, const std::string& s, const std::string& r) {
    if (!valid_identifier(name)) throw SchemaError("invalid generator name '" + name + "'");
    if (level < 0) throw SchemaError("negative level for '" + name + "'");
    int id = static_cast<int>(p.gens_.size());
    if (!p.gen_ids_.emplace(name, id).second) throw SchemaError("duplicate generator '" + name + "'");
    Generator g;
    g.name = name;
    g.level = level;
    g.src = p.vertex(s);
    g.rng = p.vertex(r);
    p.gens_.push_back(std::move(g));
    if (static_cast<int>(p.by_level_.size()) <= level) p.by_level_.resize(static_cast<std::size_t>(level) + 1);
    p.by_level_[static_cast<std::size_t>(level)].push_back(id);
  };
  p.by_level_.resize(1);
  for (const auto& e : raw.edges) add_gen(e.name, 0, e.src, e.rng);
  for (const auto& a : raw.atoms) {
    if (a.level < 1) throw SchemaError("atom '" + a.name + "' must have level >= 1");
    add_gen(a.name, a.level, a.src, a.rng);
  }
  for (const auto& a : raw.atoms) {
    int id = p.generator(a.name);
    if (a.cycle.empty()) throw SchemaError("atom '" + a.name + "' has an empty lasso cycle");
    std::vector<int> pre, cyc;
    for (const auto& n : a.prefix) pre.push_back(p.generator(n));
    for (const auto& n : a.cycle) cyc.push_back(p.generator(n));
    for (int x : pre)
      if (p.level(x) != a.level - 1) throw SchemaError("lasso of '" + a.name + "' uses '" + p.name(x) + "' of the wrong level");
    for (int x : cyc)
      if (p.level(x) != a.level - 1) throw SchemaError("lasso of '" + a.name + "' uses '" + p.name(x) + "' of the wrong level");
    p.gens_[static_cast<std::size_t>(id)].lasso = EPSeq<int>(pre, cyc);
  }
  for (const auto& e : raw.prepends) {
    int u = p.generator(e.left), a = p.generator(e.atom), r = p.generator(e.result);
    if (p.level(a) != e.level || p.level(r) != e.level)
      throw SchemaError("prepend entry " + e.left + "." + e.atom + " listed under level " + std::to_string(e.level) +
                        " does not match atom levels");
    if (p.level(u) >= e.level) throw SchemaError("prepend left argument '" + e.left + "' must have lower level");
    auto [it, fresh] = p.prepend_.emplace(std::make_pair(u, a), r);
    if (!fresh) {
      if (it->second != r) throw SchemaError("conflicting prepend entries for (" + e.left + ", " + e.atom + ")");
      continue;
    }
    p.prepend_list_.push_back({{u, a}, r});
  }
  for (const auto& t : raw.tails) {
    int a = p.generator(t.atom), r = p.generator(t.result);
    if (p.level(a) != t.level || p.level(r) != t.level)
      throw SchemaError("tails entry for '" + t.atom + "' does not match its level");
    if (t.shift == 0) throw SchemaError("tails entry for '" + t.atom + "' has shift 0");
    auto [it, fresh] = p.tails_.emplace(std::make_pair(a, t.shift), r);
    if (!fresh && it->second != r) throw SchemaError("conflicting tails entries for '" + t.atom + "'");
  }

  std::size_t n = p.gens_.size();
  p.next_.assign(n, std::nullopt);
  p.orbit_.assign(n, std::nullopt);
  p.next_problem_.assign(n, "");
  for (std::size_t id = 0; id < n; ++id) {
    const Generator& g = p.gens_[id];
    if (g.level == 0) continue;
    auto explicit_next = p.tails_.find({static_cast<int>(id), 1UL});
    if (explicit_next != p.tails_.end()) {
      p.next_[id] = explicit_next->second;
      continue;
    }
    EPSeq<int> shifted = g.lasso.drop(std::size_t{1});
    std::vector<int> matches;
    for (int b : p.level_generators(g.level))
      if (p.gen(b).lasso == shifted) matches.push_back(b);
    if (matches.size() == 1)
      p.next_[id] = matches[0];
    else
      p.next_problem_[id] = matches.empty() ? "no atom matches the shifted lasso" : "several atoms match the shifted lasso";
  }
  for (std::size_t id = 0; id < n; ++id) {
    if (p.gens_[id].level == 0) continue;
    std::vector<int> seq;
    std::map<int, std::size_t> seen;
    int cur = static_cast<int>(id);
    bool ok = true;
    while (!seen.count(cur)) {
      seen[cur] = seq.size();
      seq.push_back(cur);
      auto nx = p.next_[static_cast<std::size_t>(cur)];
      if (!nx) {
        ok = false;
        break;
      }
      cur = *nx;
    }
    if (!ok) continue;
    std::size_t start = seen[cur];
    p.orbit_[id] = EPSeq<int>({seq.begin(), seq.begin() + static_cast<long>(start)},
                              {seq.begin() + static_cast<long>(start), seq.end()});
  }
  return p;
}

std::vector<ValidationIssue> validate(const Presentation& p) {
  std::vector<ValidationIssue> issues;
  auto issue = [&](std::string check, std::string msg, std::string witness) {
    issues.push_back({std::move(check), std::move(msg), std::move(witness)});
  };
  const int K = p.max_level();

  // (e) coherence of lassos
  for (int k = 1; k <= K; ++k) {
    for (int a : p.level_generators(k)) {
      const auto& L = p.gen(a).lasso;
      if (p.rng(L.at(std::size_t{0})) != p.rng(a))
        issue("coherence", "atom range differs from the range of its first lasso entry", p.name(a));
      std::size_t span = L.prefix.size() + 2 * L.cycle.size();
      for (std::size_t i = 0; i + 1 < span; ++i) {
        if (p.src(L.at(i)) != p.rng(L.at(i + 1))) {
          issue("coherence", "lasso entries do not compose", p.name(a) + " at " + std::to_string(i));
          break;
        }
      }
    }
  }

  // (a) totality
  for (int k = 1; k <= K; ++k) {
    for (int a : p.level_generators(k)) {
      for (int j = 0; j < k; ++j) {
        for (int u : p.level_generators(j)) {
          if (p.src(u) != p.rng(a)) continue;
          if (!p.prepend(u, a)) issue("totality", "missing prepend entry", "(" + p.name(u) + ", " + p.name(a) + ")");
        }
      }
    }
  }

  // (b) left cancellation, (c) lasso compatibility, (e) coherence of results
  std::map<std::pair<int, int>, int> seen;
  for (const auto& [key, r] : p.prepend_entries()) {
    auto [u, a] = key;
    if (p.src(u) != p.rng(a)) {
      issue("coherence", "prepend entry is not composable", "(" + p.name(u) + ", " + p.name(a) + ")");
      continue;
    }
    if (p.src(r) != p.src(a) || p.rng(r) != p.rng(u))
      issue("coherence", "prepend result has wrong source or range", "(" + p.name(u) + ", " + p.name(a) + ") -> " + p.name(r));
    auto [it, fresh] = seen.emplace(std::make_pair(u, r), a);
    if (!fresh)
      issue("left-cancellation", "prepend is not injective",
            p.name(u) + "." + p.name(it->second) + " = " + p.name(u) + "." + p.name(a) + " = " + p.name(r));
    int k = p.level(a);
    const auto& La = p.gen(a).lasso;
    std::optional<EPSeq<int>> expected;
    if (p.level(u) == k - 1) {
      expected = La.cons(u);
    } else {
      auto h = p.prepend(u, La.at(std::size_t{0}));
      if (h) expected = La.replace_head(*h);
    }
    if (!expected)
      issue("lasso", "lower-level prepend needed for lasso check is missing", "(" + p.name(u) + ", " + p.name(a) + ")");
    else if (!(*expected == p.gen(r).lasso))
      issue("lasso", "result lasso differs from the prepended lasso", "(" + p.name(u) + ", " + p.name(a) + ") -> " + p.name(r));
  }

  // (d) tail closure
  for (int k = 1; k <= K; ++k) {
    for (int a : p.level_generators(k)) {
      if (!p.next(a)) {
        issue("tail-closure", p.next_problem_[static_cast<std::size_t>(a)], p.name(a) + " shifted by 1");
        continue;
      }
      int t = *p.next(a);
      if (!(p.gen(t).lasso == p.gen(a).lasso.drop(std::size_t{1})))
        issue("tail-closure", "explicit tail does not carry the shifted lasso", p.name(a) + " shifted by 1 -> " + p.name(t));
      if (p.src(t) != p.src(a)) issue("coherence", "tail atom has a different source", p.name(a) + " -> " + p.name(t));
    }
  }
  for (const auto& [key, r] : p.explicit_tails()) {
    auto [a, j] = key;
    if (!p.orbit(a)) continue;
    if (p.tail_at(a, mpz_class(j)) != r)
      issue("tail-closure", "explicit tails entry disagrees with iterated shifts", p.name(a) + " shifted by " + std::to_string(j));
  }

  // (f) tail consistency
  for (int k = 1; k <= K; ++k) {
    for (int a : p.level_generators(k)) {
      const auto& o = p.orbit(a);
      if (!o) continue;
      const auto& L = p.gen(a).lasso;
      std::size_t limit = std::max(o->window(), L.window());
      for (std::size_t j = 1; j <= limit; ++j) {
        std::vector<int> head = L.take(j);
        auto back = p.fold_prepend(head, o->at(j));
        if (!back || *back != a) {
          issue("tail-consistency", "prepending the head word to the tail does not recover the atom",
                p.name(a) + " at shift " + std::to_string(j) + " (head " + word_text(p, head) + ", tail " + p.name(o->at(j)) + ")");
          break;
        }
      }
    }
  }
  return issues;
}

Presentation load_presentation(const RawPresentation& raw) {
  Presentation p = Presentation::build(raw);
  auto issues = validate(p);
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return p;
}

namespace {

const json& need(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing key '") + key + "'");
  return j.at(key);
}

std::string str(const json& j, const char* key) {
  const json& v = need(j, key);
  if (!v.is_string()) throw SchemaError(std::string("key '") + key + "' must be a string");
  return v.get<std::string>();
}

std::vector<std::string> strs(const json& j, const char* key) {
  const json& v = need(j, key);
  if (!v.is_array()) throw SchemaError(std::string("key '") + key + "' must be a list");
  std::vector<std::string> out;
  for (const auto& x : v) {
    if (!x.is_string()) throw SchemaError(std::string("key '") + key + "' must list names");
    out.push_back(x.get<std::string>());
  }
  return out;
}

int level_key(const std::string& s) {
  try {
    std::size_t used = 0;
    int k = std::stoi(s, &used);
    if (used != s.size() || k < 1) throw SchemaError("");
    return k;
  } catch (const std::exception&) {
    throw SchemaError("invalid level key '" + s + "'");
  }
}

}  // namespace

RawPresentation parse_presentation_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("presentation must be a JSON object");
  if (str(doc, "format") != "ordgraph-v1") throw SchemaError("unsupported format (expected ordgraph-v1)");
  static const std::set<std::string> known{"format", "vertices", "edges", "atoms", "prepend", "tails"};
  for (const auto& [k, _] : doc.items())
    if (!known.count(k)) throw SchemaError("unknown key '" + k + "'");
  RawPresentation raw;
  raw.vertices = strs(doc, "vertices");
  for (const auto& e : need(doc, "edges")) raw.edges.push_back({str(e, "name"), str(e, "src"), str(e, "rng")});
  if (doc.contains("atoms")) {
    for (const auto& [lvl, list] : doc.at("atoms").items()) {
      int k = level_key(lvl);
      for (const auto& a : list) raw.atoms.push_back({str(a, "name"), k, str(a, "src"), str(a, "rng"), strs(a, "prefix"), strs(a, "cycle")});
    }
  }
  if (doc.contains("prepend")) {
    for (const auto& [lvl, list] : doc.at("prepend").items()) {
      int k = level_key(lvl);
      for (const auto& e : list) raw.prepends.push_back({k, str(e, "left"), str(e, "atom"), str(e, "result")});
    }
  }
  if (doc.contains("tails")) {
    for (const auto& [lvl, list] : doc.at("tails").items()) {
      int k = level_key(lvl);
      for (const auto& e : list) {
        const json& s = need(e, "shift");
        if (!s.is_number_unsigned() || s.get<unsigned long>() == 0) throw SchemaError("tails shift must be a positive integer");
        raw.tails.push_back({k, str(e, "atom"), s.get<unsigned long>(), str(e, "result")});
      }
    }
  }
  return raw;
}

Presentation load_presentation_text(const std::string& text) { return load_presentation(parse_presentation_json(text)); }

Presentation load_presentation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_presentation_text(ss.str());
}

std::string presentation_to_json(const RawPresentation& raw) {
  json doc;
  doc["format"] = "ordgraph-v1";
  doc["vertices"] = raw.vertices;
  doc["edges"] = json::array();
  for (const auto& e : raw.edges) doc["edges"].push_back({{"name", e.name}, {"src", e.src}, {"rng", e.rng}});
  doc["atoms"] = json::object();
  for (const auto& a : raw.atoms)
    doc["atoms"][std::to_string(a.level)].push_back(
        {{"name", a.name}, {"src", a.src}, {"rng", a.rng}, {"prefix", a.prefix}, {"cycle", a.cycle}});
  doc["prepend"] = json::object();
  for (const auto& e : raw.prepends)
    doc["prepend"][std::to_string(e.level)].push_back({{"left", e.left}, {"atom", e.atom}, {"result", e.result}});
  if (!raw.tails.empty()) {
    doc["tails"] = json::object();
    for (const auto& t : raw.tails)
      doc["tails"][std::to_string(t.level)].push_back({{"atom", t.atom}, {"shift", t.shift}, {"result", t.result}});
  }
  return doc.dump(2) + "\n";
}

}  // namespace ordgraph
