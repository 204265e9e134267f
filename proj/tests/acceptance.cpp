// Acceptance run: one PASS/FAIL line per criterion, limits fixed below.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "corpus.hpp"
#include "ordgraph/actions.hpp"
#include "ordgraph/boundary.hpp"
#include "ordgraph/conditions.hpp"
#include "ordgraph/correspondence.hpp"
#include "ordgraph/ordinal.hpp"
#include "ordgraph/representation.hpp"
#include "ordgraph/shift.hpp"
#include "oracles.hpp"

using namespace ordgraph;
using namespace testsupport;

namespace {

constexpr double kGoldenMs = 1.0;
constexpr double kOrdinalSuiteMs = 5000.0;
constexpr double kPathSuiteMs = 10000.0;
constexpr double kBoundarySuiteMs = 10000.0;
constexpr double kPiMs = 30000.0;
constexpr std::size_t kOrdinalCases = 10000;
constexpr std::size_t kPathCases = 1000;
constexpr std::size_t kBoundaryPairs = 500;
constexpr std::size_t kShiftFinite = 500;
constexpr std::size_t kGraphElements = 100;
constexpr std::size_t kPiSamples = 200;

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Collects failures with the first few witnesses.
struct Tally {
  std::size_t cases = 0, failures = 0;
  std::string first;

  void check(bool ok, const std::string& what) {
    ++cases;
    if (ok) return;
    if (failures++ == 0) first = what;
  }
  void check(bool ok, const std::function<std::string()>& what) {
    ++cases;
    if (ok) return;
    if (failures++ == 0) first = what();
  }
};

int failed_criteria = 0;

void run(int id, const std::string& title, double limit_ms, const std::function<Outcome()>& body) {
  auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  bool in_time = limit_ms <= 0 || ms < limit_ms;
  bool ok = o.ok && in_time;
  if (!ok) ++failed_criteria;
  std::ostringstream t;
  t.precision(3);
  t << std::fixed << ms << " ms";
  if (limit_ms > 0) t << " < " << limit_ms << " ms" << (in_time ? "" : " EXCEEDED");
  std::printf("%s %2d %s: %s [%s]\n", ok ? "PASS" : "FAIL", id, title.c_str(), o.detail.c_str(), t.str().c_str());
  std::fflush(stdout);
}

Outcome from(const Tally& t, const std::string& what) {
  std::string d = std::to_string(t.cases) + " " + what + ", " + std::to_string(t.failures) + " failures";
  if (t.failures) d += "; first: " + t.first;
  return {t.failures == 0, d};
}

std::set<std::string> gen_names(const Presentation& p, const std::vector<int>& ids) {
  std::set<std::string> out;
  for (int g : ids) out.insert(p.name(g));
  return out;
}

Outcome ordinal_golden() {
  Ordinal s = parse_ordinal("w^w*2+w*3+2") + parse_ordinal("w^w+w^3");
  std::string got = format(s);
  return {got == "w^w*3+w^3", "(w^w*2+w*3+2)+(w^w+w^3) = " + got};
}

Outcome ordinal_suite() {
  std::mt19937_64 rng(20260);
  Tally assoc, absorb, lsub, dm;
  for (std::size_t i = 0; i < kOrdinalCases; ++i) {
    Ordinal a = random_ordinal(rng, 3), b = random_ordinal(rng, 3), c = random_ordinal(rng, 3);
    assoc.check((a + b) + c == a + (b + c), [&] { return format(a) + ", " + format(b) + ", " + format(c); });

    Ordinal x = random_ordinal(rng, 2), y = random_ordinal(rng, 2);
    if (x == y) y = y + Ordinal(1);
    if (y < x) std::swap(x, y);
    absorb.check(omega_pow(x) + omega_pow(y) == omega_pow(y), [&] { return format(x) + " < " + format(y); });

    Ordinal lo = a < b ? a : b, hi = a < b ? b : a;
    lsub.check(lo + left_sub(lo, hi) == hi, [&] { return format(lo) + " <= " + format(hi); });

    long kk = static_cast<long>(rng() % 4);
    Ordinal k(static_cast<unsigned long>(kk));
    Ordinal below = random_small_ordinal(rng, kk, 6);
    DivMod d = divmod_omega(below, k);
    dm.check(!d.overflow() && omega_term(k, *d.quotient) + d.remainder == below && d.remainder < omega_pow(k),
             [&] { return format(below) + " at k=" + format(k); });
  }
  Tally all;
  for (const Tally* t : {&assoc, &absorb, &lsub, &dm}) {
    all.cases += t->cases;
    all.failures += t->failures;
    if (all.first.empty()) all.first = t->first;
  }
  Outcome o = from(all, "cases");
  o.detail = std::to_string(kOrdinalCases) + " each for associativity, absorption, left_sub inversion, divmod reconstruction; " + o.detail;
  return o;
}

Outcome e1_structure() {
  Presentation p = fixture("e1.json");
  bool valid = validate(p).empty();
  auto atoms = gen_names(p, p.level_generators(1));
  bool atoms_ok = atoms == std::set<std::string>{"g", "fg"};
  bool reg = is_regular(p, p.vertex("v"), 1) && is_regular(p, p.vertex("w"), 1);
  std::string d = std::string("valid=") + (valid ? "yes" : "no") + ", atoms(E1,1)={";
  for (const auto& a : atoms) d += (d.back() == '{' ? "" : ",") + a;
  d += std::string("}, 1-regular v,w=") + (reg ? "yes" : "no");
  return {valid && atoms_ok && reg, d};
}

Outcome condition_c_suite() {
  Presentation e1 = fixture("e1.json");
  auto w = condition_c(e1);
  bool e1_ok = w && w->level == 1 && e1.name(w->atom) == "g" && format_path(e1, w->word) == "e.f";
  bool f_ok = !condition_c(fixture("f.json")).has_value();
  auto corpus = hand_corpus();
  for (auto& n : random_corpus(404, 30, true)) corpus.push_back(n);
  for (auto& n : random_corpus(405, 10, false)) corpus.push_back(n);
  std::size_t s_verified = 0, counter = 0;
  std::string bad;
  for (const auto& [name, p] : corpus) {
    auto r = condition_s(p, std::max(2UL, default_max_n(p)));
    if (!r.verified) continue;
    ++s_verified;
    if (condition_c(p)) {
      ++counter;
      bad = name;
    }
  }
  std::string d = "E1 witness " + (w ? "(" + std::to_string(w->level) + ", " + e1.name(w->atom) + ", " + format_path(e1, w->word) + ")" : "none") +
                  ", F " + (f_ok ? "ok" : "witness") + "; " + std::to_string(corpus.size()) + " presentations, " + std::to_string(s_verified) +
                  " with (S) verified_up_to(N>=2), " + std::to_string(counter) + " counterexamples" + (bad.empty() ? "" : " (" + bad + ")");
  return {e1_ok && f_ok && corpus.size() >= 10 && counter == 0, d};
}

Outcome path_suite() {
  std::vector<Named> ps{{"e1", fixture("e1.json")}, {"f", fixture("f.json")}};
  for (auto& n : random_corpus(505, 6, true)) ps.push_back(n);
  std::mt19937_64 rng(5050);
  Tally heads, recon, additivity, cancel;
  for (const auto& [name, p] : ps) {
    for (std::size_t i = 0; i < kPathCases; ++i) {
      Path a = random_path(p, rng, 5);
      int s = path_source(p, a);
      auto nexts = normal_words(p, s, rng() % 3);
      Path b = nexts.empty() ? vertex_path(s) : nexts[rng() % nexts.size()];
      Path ab = compose(p, a, b);
      Ordinal da = degree(p, a), dab = degree(p, ab);
      auto tag = [&] { return name + ": " + format_path(p, a) + " | " + format_path(p, b); };

      Ordinal beta = random_position(p, a, rng);
      bool h1 = head(p, ab, beta) == head(p, a, beta);
      auto bpos = effective_positions(p, b);
      Ordinal gamma = bpos[rng() % bpos.size()];
      bool h2 = head(p, ab, da + gamma) == compose(p, a, head(p, b, gamma));
      heads.check(h1 && h2, tag);

      recon.check(compose(p, head(p, a, beta), tail(p, a, beta)) == a && compose(p, head(p, ab, beta), tail(p, ab, beta)) == ab, tag);
      additivity.check(dab == da + degree(p, b), tag);

      auto others = normal_words(p, s, rng() % 3);
      Path c = others.empty() ? vertex_path(s) : others[rng() % others.size()];
      cancel.check(!(compose(p, a, c) == ab) || c == b, tag);
    }
  }
  std::string d;
  bool ok = true;
  for (auto [t, what] : {std::pair{&heads, "head identities"}, {&recon, "reconstruction"}, {&additivity, "degree additivity"}, {&cancel, "left cancellation"}}) {
    d += (d.empty() ? "" : ", ") + std::to_string(t->cases) + " " + what + " (" + std::to_string(t->failures) + " fail)";
    ok = ok && t->failures == 0;
    if (t->failures) d += " first: " + t->first;
  }
  return {ok, std::to_string(ps.size()) + " presentations; " + d};
}

Outcome ck_suite() {
  Presentation p = fixture("e1.json");
  Representation full = load_representation_file(fixture_path("e1-full.rep.json"));
  Representation low = load_representation_file(fixture_path("e1-level0.rep.json"));
  auto rf = verify_ck(p, full);
  auto rl = verify_ck(p, low, std::set<int>{0});
  bool tef = full.at("e") * full.at("f") == full.at("v");
  LaurentMatrix diff = low.at("e") * low.at("f") - low.at("v");
  bool ne = !diff.is_zero();
  bool kernel = evaluate(diff, {{0, GaussRat(1)}}).is_zero();
  std::string d = "full rep " + std::to_string(rf.checked) + " relations/" + std::to_string(rf.failures.size()) + " residuals, level-0 rep " +
                  std::to_string(rl.checked) + "/" + std::to_string(rl.failures.size()) + "; T_eT_f=T_v " + (tef ? "yes" : "no") + ", S_eS_f-S_v=" +
                  format(diff, low.variables) + ", at z=1 " + (kernel ? "0" : "nonzero");
  return {rf.passed() && rl.passed() && tef && ne && kernel, d};
}

Outcome correspondence_suite() {
  Presentation p = fixture("e1.json");
  Representation full = load_representation_file(fixture_path("e1-full.rep.json"));
  auto r = verify_correspondence(p, 1, restrict_representation(p, full, 1), full, {60, 11});
  std::set<std::string> cov;
  for (int v : katsura_vertices(p, 1)) cov.insert(p.vertex_name(v));
  bool cov_ok = cov == std::set<std::string>{"v", "w"};

  // Directed-graph correspondence on F at level 0: x(e) = lambda_e T_s(e) in the vertex representation of c_0(Lambda_0).
  Presentation f = fixture("f.json");
  Representation vr = load_representation_file(fixture_path("f-vertices.rep.json"));
  std::mt19937_64 rng(4343);
  std::uniform_int_distribution<long> c(-3, 3);
  auto coef = [&] { return GaussRat(c(rng), c(rng)); };
  Tally ex;
  const auto& edges = f.level_generators(0);
  for (std::size_t i = 0; i < kGraphElements; ++i) {
    std::map<int, GaussRat> lam, mu;
    std::map<int, GaussRat> av;
    XElement x{0, {}}, y{0, {}};
    for (int e : edges) {
      lam[e] = coef();
      mu[e] = coef();
      if (!lam[e].is_zero()) x.values.emplace(e, LaurentScalar(lam[e]) * vertex_matrix(f, vr, f.src(e)));
      if (!mu[e].is_zero()) y.values.emplace(e, LaurentScalar(mu[e]) * vertex_matrix(f, vr, f.src(e)));
    }
    LaurentMatrix a(vr.size);
    for (int v = 0; v < f.vertex_count(); ++v) {
      av[v] = coef();
      a = a + LaurentScalar(av[v]) * vertex_matrix(f, vr, v);
    }
    // <x,y> = sum_v (sum_{s(e)=v} conj(x(e)) y(e)) T_v
    LaurentMatrix inner(vr.size);
    for (int v = 0; v < f.vertex_count(); ++v) {
      GaussRat s;
      for (int e : edges)
        if (f.src(e) == v) s = s + lam[e].conj() * mu[e];
      inner = inner + LaurentScalar(s) * vertex_matrix(f, vr, v);
    }
    ex.check(x_inner(x, y, vr) == inner, "inner product, element " + std::to_string(i));
    // (x . a)(e) = x(e) a(s(e)); (a . x)(e) = a(r(e)) x(e)
    XElement xa = x_right_act(x, a), ax{0, {}};
    for (int v = 0; v < f.vertex_count(); ++v) {
      XElement part = x_left_act(f, vertex_path(v), x);
      for (auto& [e, m] : part.values) m = LaurentScalar(av[v]) * m;
      ax = x_add(ax, part);
    }
    bool right = true, left = true;
    for (int e : edges) {
      LaurentMatrix want_r = LaurentScalar(lam[e] * av[f.src(e)]) * vertex_matrix(f, vr, f.src(e));
      LaurentMatrix want_l = LaurentScalar(av[f.rng(e)] * lam[e]) * vertex_matrix(f, vr, f.src(e));
      LaurentMatrix got_r = xa.values.count(e) ? xa.values.at(e) : LaurentMatrix(vr.size);
      LaurentMatrix got_l = ax.values.count(e) ? ax.values.at(e) : LaurentMatrix(vr.size);
      right = right && got_r == want_r;
      left = left && got_l == want_l;
    }
    ex.check(right, "right action, element " + std::to_string(i));
    ex.check(left, "left action, element " + std::to_string(i));
  }
  Representation deg = load_representation_file(fixture_path("f-degenerate.rep.json"));
  auto rf = verify_correspondence(f, 0, restrict_representation(f, deg, 0), deg, {40, 12});

  std::string d = "E1 k=1: " + std::to_string(r.checked) + " instances, " + std::to_string(r.failures.size()) + " failures" +
                  (r.failures.empty() ? "" : " (first " + r.failures[0].relation + " " + r.failures[0].instance + ")") + ", covariance at {";
  for (const auto& v : cov) d += (d.back() == '{' ? "" : ",") + v;
  d += "}; F k=0: graph correspondence formulas on " + std::to_string(kGraphElements) + " elements, " + std::to_string(ex.failures) +
       " mismatches" + (ex.failures ? " (" + ex.first + ")" : "") + ", degenerate family " + std::to_string(rf.failures.size()) + " failures";
  return {r.passed() && cov_ok && ex.failures == 0 && rf.passed(), d};
}

std::optional<StarPath> random_star(const Presentation& p, std::mt19937_64& rng) {
  Path pre = random_path(p, rng, 3);
  int u = path_source(p, pre);
  std::vector<Path> loops;
  for (std::size_t l = 1; l <= 3; ++l)
    for (auto& h : normal_words(p, u, l, true)) loops.push_back(h);
  if (loops.empty() || rng() % 3 == 0) return StarPath::finite(pre);
  return star_compose(p, pre, omega_power(p, loops[rng() % loops.size()]));
}

Outcome boundary_suite() {
  Presentation e1 = fixture("e1.json");
  bool ex1 = is_boundary(e1, parse_star(e1, "(g)^w"));
  bool ex2 = !is_boundary(e1, StarPath::finite(parse_path(e1, "g")));
  auto corpus = hand_corpus();
  for (auto& n : random_corpus(808, 20, true)) corpus.push_back(n);
  std::mt19937_64 rng(8080);
  Tally lemma, maxext;
  std::size_t boundary_pairs = 0;
  while (lemma.cases < kBoundaryPairs) {
    const auto& [name, p] = corpus[rng() % corpus.size()];
    auto f = random_star(p, rng);
    std::vector<Path> es;
    for (std::size_t l = 0; l <= 2; ++l)
      for (auto& e : normal_words(p, -1, l))
        if (path_source(p, e) == f->range()) es.push_back(e);
    if (es.empty()) continue;
    Path e = es[rng() % es.size()];
    bool fb = is_boundary(p, *f);
    boundary_pairs += fb ? 1 : 0;
    lemma.check(is_boundary(p, star_compose(p, e, *f)) == fb, [&] { return name + ": " + format_path(p, e) + " | " + format_star(p, *f); });
  }
  for (const auto& [name, p] : corpus)
    for (int v = 0; v < p.vertex_count(); ++v) maxext.check(is_boundary(p, maximal_extension(p, v)), name + "@" + p.vertex_name(v));
  std::string d = std::string("examples ") + (ex1 && ex2 ? "ok" : "wrong") + "; compose invariance on " + std::to_string(lemma.cases) + " pairs (" +
                  std::to_string(boundary_pairs) + " with f boundary), " + std::to_string(lemma.failures) + " failures" +
                  (lemma.failures ? " first " + lemma.first : "") + "; maximal_extension " + std::to_string(maxext.cases) + " vertices, " +
                  std::to_string(maxext.failures) + " non-boundary";
  return {ex1 && ex2 && lemma.failures == 0 && maxext.failures == 0, d};
}

bool cancellative(const Presentation& p, const StarPath& f, int k) { return !is_cancellative(p, f, k).has_value(); }

std::vector<StarPath> stars_from(const Presentation& p, int v) {
  std::vector<StarPath> out;
  for (std::size_t l = 0; l <= 2; ++l)
    for (const auto& pre : normal_words(p, v, l)) {
      out.push_back(StarPath::finite(pre));
      for (std::size_t lc = 1; lc <= 2; ++lc)
        for (const auto& h : normal_words(p, path_source(p, pre), lc, true)) out.push_back(star_compose(p, pre, omega_power(p, h)));
    }
  return out;
}

Outcome shift_suite() {
  auto corpus = hand_corpus();
  for (auto& n : random_corpus(909, 20, true)) corpus.push_back(n);
  Tally p1, p2, p3, cor64, cor66;
  std::size_t p1_defined = 0, cor66_nonvacuous = 0, c_presentations = 0;
  std::mt19937_64 rng(9090);
  for (const auto& [name, p] : corpus) {
    bool c_holds = !condition_c(p).has_value();
    c_presentations += c_holds ? 1 : 0;
    for (int v = 0; v < p.vertex_count(); ++v) {
      for (const auto& f : stars_from(p, v)) {
        auto tag = [&] { return name + ": " + format_star(p, f); };
        for (int k = 0; k <= p.max_level(); ++k) {
          Ordinal top = level_degree(k + 1);
          bool canc = cancellative(p, f, k);
          if (star_length(p, f) > top) {
            StarPath h = StarPath::finite(star_head(p, f, top));
            bool hc = cancellative(p, h, k);
            p1_defined += canc ? 1 : 0;
            p1.check(canc == hc && shift_v_extended(p, f, k) == shift_v_extended(p, h, k), tag);
          }
          if (canc) {
            long whole = shift_v(p, f, k);
            for (const auto& beta : star_positions(p, f)) {
              if (!(beta < top) || !(beta < star_length(p, f))) continue;
              p3.check(whole == shift_v(p, StarPath::finite(star_head(p, f, beta)), k) + shift_v(p, star_tail(p, f, beta), k), tag);
            }
          }
          std::vector<Path> qs;
          for (std::size_t l = 1; l <= 2; ++l)
            for (auto& q : normal_words(p, -1, l)) {
              bool low = path_source(p, q) == f.range();
              for (int g : q.word) low = low && p.level(g) <= k;
              if (low) qs.push_back(q);
            }
          if (!qs.empty()) cor64.check(cancellative(p, star_compose(p, qs[rng() % qs.size()], f), k) == canc, tag);
        }
      }
      // Under (C): boundary paths at a (k+1)-regular vertex are k-cancellative.
      if (!c_holds) continue;
      for (int k = 0; k < p.max_level(); ++k) {
        if (!is_regular(p, v, k + 1)) continue;
        for (const auto& f : enumerate_boundary(p, v, 1, 2)) {
          ++cor66_nonvacuous;
          cor66.check(cancellative(p, f, k), name + ": " + format_star(p, f));
        }
      }
    }
  }
  while (p2.cases < kShiftFinite) {
    const auto& [name, p] = corpus[rng() % corpus.size()];
    Path a = random_path(p, rng, 6);
    int k = static_cast<int>(rng() % static_cast<unsigned long>(p.max_level() + 1));
    Ordinal d = degree(p, a);
    if (!(d < level_degree(k + 1))) continue;
    DivMod dm = divmod_omega(d, Ordinal(static_cast<unsigned long>(k)));
    p2.check(shift_v(p, StarPath::finite(a), k) == dm.quotient->get_si(), name + ": " + format_path(p, a));
  }
  bool ok = p1.failures + p2.failures + p3.failures + cor64.failures + cor66.failures == 0;
  auto part = [](const Tally& t, const char* what) {
    return std::to_string(t.cases) + " " + what + (t.failures ? " (" + std::to_string(t.failures) + " fail: " + t.first + ")" : "");
  };
  std::string d = part(p1, "property (1)") + " [" + std::to_string(p1_defined) + " cancellative], " + part(p2, "property (2)") + ", " +
                  part(p3, "property (3)") + ", " + part(cor64, "prefix invariance") + ", regular-range cancellativity on " + std::to_string(c_presentations) +
                  " (C)-presentations: " + std::to_string(cor66_nonvacuous) + " non-vacuous instances" +
                  (cor66.failures ? " (" + std::to_string(cor66.failures) + " fail: " + cor66.first + ")" : "");
  return {ok, d};
}

Outcome pi_suite() {
  Presentation p = fixture("e1.json");
  auto paths = boundary_samples(p, 1, 2);
  auto samples = shift_samples(paths, 2, 5);
  auto r = verify_pi(p, samples, 2);
  std::size_t gauge = 0;
  for (const auto& f : r.failures) gauge += f.relation == "gauge" ? 1 : 0;
  std::string d = std::to_string(samples.size()) + " basis vectors over " + std::to_string(paths.size()) + " boundary paths, " +
                  std::to_string(r.checked) + " instances, " + std::to_string(r.failures.size()) + " failures (" + std::to_string(gauge) + " gauge)" +
                  (r.failures.empty() ? "" : "; first " + r.failures[0].relation + " " + r.failures[0].instance);
  return {samples.size() >= kPiSamples && r.passed(), d};
}

}  // namespace

int main() {
  run(1, "ordinal golden sum", kGoldenMs, ordinal_golden);
  run(2, "ordinal properties", kOrdinalSuiteMs, ordinal_suite);
  run(3, "E1 structure", 0, e1_structure);
  run(4, "conditions (C) and (S)", 0, condition_c_suite);
  run(5, "path engine properties", kPathSuiteMs, path_suite);
  run(6, "Cuntz-Krieger families", 0, ck_suite);
  run(7, "correspondence", 0, correspondence_suite);
  run(8, "boundary suite", kBoundarySuiteMs, boundary_suite);
  run(9, "shift suite", 0, shift_suite);
  run(10, "shift representation", kPiMs, pi_suite);
  std::printf("%d of 10 criteria failed\n", failed_criteria);
  return failed_criteria == 0 ? 0 : 1;
}
