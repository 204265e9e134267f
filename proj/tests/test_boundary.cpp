#include <doctest.h>

#include <random>

#include "corpus.hpp"
#include "ordgraph/boundary.hpp"
#include "ordgraph/conditions.hpp"
#include "oracles.hpp"

using namespace ordgraph;
using namespace testsupport;

namespace {

struct Fx {
  Presentation p;
  explicit Fx(const char* file) : p(fixture(file)) {}
  StarPath S(const std::string& s) const { return parse_star(p, s); }
  Path P(const std::string& s) const { return parse_path(p, s); }
  std::string str(const StarPath& f) const { return format_star(p, f); }
};

std::vector<Named> star_corpus() {
  auto c = hand_corpus();
  for (auto& n : random_corpus(101, 30, true)) c.push_back(n);
  for (auto& n : random_corpus(102, 10, false)) c.push_back(n);
  return c;
}

// A random element of Lambda*: a finite path, or a prefix followed by h^w for a random loop h.
std::optional<StarPath> random_star(const Presentation& p, std::mt19937_64& rng) {
  Path pre = random_path(p, rng, 3);
  int u = path_source(p, pre);
  if (rng() % 3 == 0) return StarPath::finite(pre);
  std::vector<Path> loops;
  for (std::size_t l = 1; l <= 3; ++l)
    for (auto& h : normal_words(p, u, l, true)) loops.push_back(h);
  if (loops.empty()) return StarPath::finite(pre);
  return star_compose(p, pre, omega_power(p, loops[rng() % loops.size()]));
}

// Finite approximation of an infinite star path: high followed by n entries of its sequence.
Path approximate(const StarPath& f, std::size_t n) {
  std::vector<int> w = f.high().word;
  auto body = unroll(f.seq(), n);
  w.insert(w.end(), body.begin(), body.end());
  return Path{f.range(), w};
}

}  // namespace

TEST_CASE("star_length") {
  Fx t("e1.json");
  CHECK(format(star_length(t.p, StarPath::finite(t.P("g")))) == "w+1");
  CHECK(format(star_length(t.p, t.S("(g)^w"))) == "w^2");
  CHECK(format(star_length(t.p, t.S("(e.f)^w"))) == "w");
}

TEST_CASE("star_head") {
  Fx t("e1.json");
  CHECK(star_head(t.p, t.S("(g)^w"), parse_ordinal("w*2")) == t.P("g.g"));
  CHECK(star_head(t.p, t.S("(e.f)^w"), Ordinal(3)) == t.P("e.f.e"));
  CHECK(star_head(t.p, t.S("f.(e.f)^w"), Ordinal()) == t.P("id:w"));
  CHECK(star_head(t.p, t.S("(g)^w"), parse_ordinal("w*3+5")) == t.P("g.g.g.e.f.e.f.e"));
  CHECK_THROWS_AS(star_head(t.p, t.S("(e.f)^w"), omega()), std::out_of_range);
}

TEST_CASE("star_compose") {
  Fx t("e1.json");
  CHECK(star_compose(t.p, t.P("e.f"), t.S("(g)^w")) == t.S("(g)^w"));
  CHECK(star_compose(t.p, t.P("id:w"), t.S("fg.(g)^w")) == t.S("fg.(g)^w"));
  CHECK(star_compose(t.p, t.P("e"), StarPath::finite(t.P("fg"))) == StarPath::finite(t.P("g")));
  CHECK(t.str(star_compose(t.p, t.P("f"), t.S("(e.f)^w"))) == "(f.e)^w");
  CHECK(t.str(star_compose(t.p, t.P("f"), t.S("(g)^w"))) == "fg.(g)^w");
}

TEST_CASE("star_tail") {
  Fx t("e1.json");
  CHECK(star_tail(t.p, t.S("(g)^w"), omega()) == t.S("(g)^w"));
  CHECK(star_tail(t.p, t.S("fg.(g)^w"), Ordinal()) == t.S("fg.(g)^w"));
  CHECK(star_tail(t.p, StarPath::finite(t.P("g")), Ordinal(1)) == StarPath::finite(t.P("fg")));
  CHECK(t.str(star_tail(t.p, t.S("(g)^w"), Ordinal(1))) == "fg.(g)^w");
}

TEST_CASE("is_boundary") {
  Fx t("e1.json");
  CHECK(is_boundary(t.p, t.S("(g)^w")));
  CHECK(!is_boundary(t.p, StarPath::finite(t.P("g"))));
  CHECK(!is_boundary(t.p, t.S("(e.f)^w")));
  Fx f("f.json");
  CHECK(is_boundary(f.p, StarPath::finite(f.P("id:w'"))));
  CHECK(!is_boundary(f.p, StarPath::finite(f.P("id:v'"))));
}

TEST_CASE("omega_power") {
  Fx t("e1.json");
  CHECK(t.str(omega_power(t.p, t.P("g"))) == "(g)^w");
  CHECK(format(star_length(t.p, omega_power(t.p, t.P("g")))) == "w^2");
  CHECK(format(star_length(t.p, omega_power(t.p, t.P("e.f")))) == "w");
  CHECK(omega_power(t.p, t.P("g.e.f")) == t.S("(g)^w"));
  CHECK(omega_power(t.p, t.P("e.f.e.f")) == t.S("(e.f)^w"));
  Fx f("f.json");
  CHECK(f.str(omega_power(f.p, f.P("g'"))) == "(g')^w");
  CHECK(format(star_length(f.p, omega_power(f.p, f.P("g'")))) == "w");
  CHECK_THROWS(omega_power(t.p, t.P("e")));
}

TEST_CASE("maximal_extension") {
  Fx t("e1.json");
  CHECK(t.str(maximal_extension(t.p, t.p.vertex("v"))) == "(g)^w");
  Fx f("f.json");
  CHECK(maximal_extension(f.p, f.p.vertex("w'")) == StarPath::finite(f.P("id:w'")));
  CHECK(f.str(maximal_extension(f.p, f.p.vertex("v'"))) == "(g')^w");
}

TEST_CASE("enumerate_boundary") {
  Fx t("e1.json");
  auto b = enumerate_boundary(t.p, t.p.vertex("v"), 0, 1);
  REQUIRE(b.size() == 1);
  CHECK(t.str(b[0]) == "(g)^w");
  CHECK(enumerate_boundary(t.p, t.p.vertex("v"), 0, 0).empty());
  Fx f("f.json");
  auto c = enumerate_boundary(f.p, f.p.vertex("w'"), 0, 0);
  REQUIRE(c.size() == 1);
  CHECK(c[0] == StarPath::finite(f.P("id:w'")));
  CHECK(enumerate_boundary(t.p, t.p.vertex("v"), 2, 2).size() == 1);
}

TEST_CASE("star literals round trip") {
  Fx t("e1.json");
  for (const char* s : {"(g)^w", "fg.(g)^w", "(e.f)^w", "(f.e)^w", "g.e", "id:w"}) CHECK(t.str(t.S(s)) == s);
  CHECK(t.str(t.S("f.(e.f)^w")) == "(f.e)^w");
  CHECK_THROWS_AS(t.S("(g)^"), PathError);
  CHECK_THROWS_AS(t.S("e(g)^w"), PathError);
}

TEST_CASE("boundary membership is invariant under composition") {
  std::mt19937_64 rng(3);
  for (const auto& [name, p] : star_corpus()) {
    CAPTURE(name);
    for (int i = 0; i < 40; ++i) {
      auto f = random_star(p, rng);
      if (!f) continue;
      std::vector<Path> es;
      for (std::size_t l = 0; l <= 2; ++l)
        for (auto& e : normal_words(p, -1, l))
          if (path_source(p, e) == f->range()) es.push_back(e);
      if (es.empty()) continue;
      Path e = es[rng() % es.size()];
      StarPath ef = star_compose(p, e, *f);
      REQUIRE(is_boundary(p, ef) == is_boundary(p, *f));
      REQUIRE(star_length(p, ef) == degree(p, e) + star_length(p, *f));
      REQUIRE(star_tail(p, ef, degree(p, e)) == *f);
    }
  }
}

TEST_CASE("heads and tails of star paths reassemble") {
  std::mt19937_64 rng(4);
  for (const auto& [name, p] : star_corpus()) {
    CAPTURE(name);
    for (int i = 0; i < 30; ++i) {
      auto f = random_star(p, rng);
      if (!f) continue;
      CAPTURE(format_star(p, *f));
      for (const auto& beta : star_positions(p, *f)) {
        Path h = star_head(p, *f, beta);
        REQUIRE(degree(p, h) == beta);
        REQUIRE(star_compose(p, h, star_tail(p, *f, beta)) == *f);
        REQUIRE(star_divides(p, h, *f));
        if (!f->is_finite() && p.max_level() <= 1) {
          Path approx = approximate(*f, 2 * f->seq().window() + 4);
          if (beta <= degree(p, approx)) REQUIRE(h == oracle_head(p, approx, beta));
        }
      }
    }
  }
}

TEST_CASE("maximal extensions are boundary paths") {
  for (const auto& [name, p] : star_corpus()) {
    CAPTURE(name);
    for (int v = 0; v < p.vertex_count(); ++v) REQUIRE(is_boundary(p, maximal_extension(p, v)));
  }
}

TEST_CASE("h^w is a boundary path when no visited vertex is regular above its level") {
  std::size_t checked = 0;
  for (const auto& [name, p] : star_corpus()) {
    CAPTURE(name);
    for (std::size_t l = 1; l <= 3; ++l) {
      for (const auto& h : normal_words(p, -1, l, true)) {
        int K = p.level(h.word[0]);
        bool quiet = true;
        for (const auto& b : effective_positions(p, h)) {
          int s = path_source(p, head(p, h, b));
          for (int j = K + 1; j <= p.max_level(); ++j) quiet &= !is_regular(p, s, j);
        }
        if (!quiet) continue;
        ++checked;
        REQUIRE(is_boundary(p, omega_power(p, h)));
      }
    }
  }
  CHECK(checked > 0);
}
