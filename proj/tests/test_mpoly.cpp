#include <doctest.h>

#include <random>

#include "opalg/solve.hpp"

using namespace opalg;

namespace {

MPoly P(const char* s) { return parse_mpoly(s); }

MPoly random_poly(std::mt19937_64& rng, const std::vector<CVar>& vars, int terms = 4) {
  std::uniform_int_distribution<int> coef(-3, 3), exp(0, 2);
  MPoly p;
  for (int i = 0; i < terms; ++i) {
    Monomial m;
    for (CVar v : vars) m = m * Monomial::var(v, exp(rng));
    p.add_term(m, coef(rng));
  }
  return p;
}

bool satisfies(const std::vector<MPoly>& sys, const Assignment& at) {
  for (const auto& e : sys)
    if (e.evaluate(at) != 0) return false;
  return true;
}

}  // namespace

TEST_CASE("rationals are canonical") {
  Rational q = parse_rational("6/-4");
  CHECK(q.get_den() > 0);
  CHECK(q == Rational(-3, 2));
  CHECK(to_string(parse_rational("4/2")) == "2");
  CHECK_THROWS(parse_rational("1/0"));
}

TEST_CASE("polynomial text form") {
  CHECK(to_string(P("b^2 - b - c*e")) == "b^2 - b - c*e");
  CHECK(to_string(P("c*e + b - b^2")) == to_string(P("-(b^2 - b - c*e)")));
  CHECK(P("(a + b)^2") == P("a^2 + 2*a*b + b^2"));
  CHECK(P("x - x").is_zero());
  CHECK(P("1/2*a").terms().begin()->second == Rational(1, 2));
  MPoly n = P("6*a - 4*b").normalized();
  CHECK((n == P("3*a - 2*b") || n == P("2*b - 3*a")));
  CHECK(P("-9*a + 6*b").normalized() == n);
  CHECK(n.normalized() == n);
}

TEST_CASE("Buchberger on x^2 - 1, x y - 1") {
  CVar x("x"), y("y");
  MonomialOrder lex{MonomialOrder::Kind::Lex, {x, y}};
  GroebnerBasis gb = buchberger({P("x^2 - 1"), P("x*y - 1")}, lex);
  REQUIRE(gb.polys.size() == 2);
  CHECK(gb.polys[0] == P("x - y"));
  CHECK(gb.polys[1] == P("y^2 - 1"));
  CHECK(nf_mod_ideal(P("x^3"), gb) == P("y"));
  CHECK(nf_mod_ideal(P("x*y"), gb) == P("1"));
  CHECK(!gb.is_unit_ideal());
  CHECK(buchberger({P("x - 1"), P("x - 2")}, lex).is_unit_ideal());
}

TEST_CASE("normal forms respect products") {
  CVar a("a"), b("b"), c("c");
  MonomialOrder lex{MonomialOrder::Kind::Lex, {a, b, c}};
  GroebnerBasis gb = buchberger({P("a^2 - b*c"), P("a*b - c"), P("b^2 - 1")}, lex);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    MPoly p = random_poly(rng, {a, b, c}), q = random_poly(rng, {a, b, c});
    CHECK(nf_mod_ideal(p * q, gb) == nf_mod_ideal(nf_mod_ideal(p, gb) * nf_mod_ideal(q, gb), gb));
    CHECK(nf_mod_ideal(p + q, gb) == nf_mod_ideal(p, gb) + nf_mod_ideal(q, gb));
  }
}

TEST_CASE("grevlex basis generates the same ideal") {
  CVar x("x"), y("y");
  MonomialOrder grevlex{MonomialOrder::Kind::GrevLex, {x, y}};
  GroebnerBasis gb = buchberger({P("x^2 - 1"), P("x*y - 1")}, grevlex);
  CHECK(nf_mod_ideal(P("x - y"), gb).is_zero());
  CHECK(nf_mod_ideal(P("y^2 - 1"), gb).is_zero());
  CHECK(!nf_mod_ideal(P("x + y"), gb).is_zero());
}

TEST_CASE("radical membership") {
  GroebnerBasis gb = buchberger({P("a^2")});
  CHECK(in_radical(P("a"), gb));
  CHECK(!in_radical(P("a + 1"), gb));
}

TEST_CASE("Buchberger budget") {
  BuchbergerBudget tiny{1, 2};
  CHECK_THROWS_AS(buchberger({P("a^3 - b*c"), P("b^3 - a*c"), P("c^3 - a*b"), P("a*b*c - 1")}, {}, tiny),
                  ResourceLimit);
}

TEST_CASE("rational roots") {
  auto r = rational_roots(P("2*t^3 - 3*t^2 + t"), CVar("t"));
  CHECK(r == std::vector<Rational>{Rational(0), Rational(1, 2), Rational(1)});
  CHECK(rational_roots(P("t^2 - 2"), CVar("t")).empty());
}

TEST_CASE("the three-equation system splits into four components") {
  std::vector<MPoly> sys = {P("a^2 - a"), P("b^2 - b"), P("e*(a - b)")};
  auto comps = solve_components(sys);
  CHECK(comps.size() == 4);
  int with_free_e = 0;
  for (const auto& c : comps) {
    CHECK(satisfies(sys, c.representative));
    for (CVar v : c.free_variables()) with_free_e += v == CVar("e");
  }
  CHECK(with_free_e == 2);
}

TEST_CASE("solution components cover exactly the grid solutions") {
  std::vector<std::vector<MPoly>> systems = {
      {P("a^2 - a"), P("b^2 - b"), P("e*(a - b)")},
      {P("b^2 - b - c*e"), P("c*(b - 1)")},
      {P("a*b - c"), P("a*(a - 1)"), P("c*(b + 1)")},
      {P("x*y"), P("y*(y - z)"), P("x + z - 1")},
  };
  std::mt19937_64 rng(11);
  for (const auto& sys : systems) {
    auto comps = solve_components(sys);
    std::vector<CVar> vars;
    for (const auto& e : sys)
      for (CVar v : e.variables())
        if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    for (const auto& c : comps) {
      CHECK(satisfies(sys, c.representative));
      for (int i = 0; i < 10; ++i) {
        auto pt = c.sample(rng);
        REQUIRE(pt);
        CHECK(satisfies(sys, *pt));
      }
    }
    std::vector<int> idx(vars.size(), -2);
    for (;;) {
      Assignment at;
      for (std::size_t i = 0; i < vars.size(); ++i) at[vars[i]] = idx[i];
      if (satisfies(sys, at)) {
        bool covered = std::any_of(comps.begin(), comps.end(), [&](const auto& c) { return c.contains(at); });
        CHECK(covered);
      }
      std::size_t k = 0;
      while (k < idx.size() && ++idx[k] > 2) idx[k++] = -2;
      if (k == idx.size()) break;
    }
  }
}

TEST_CASE("component lists are deterministic") {
  std::vector<MPoly> sys = {P("b^2 - b - c*e"), P("c*(b - 1)"), P("e*c")};
  auto a = solve_components(sys), b = solve_components(sys);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(to_string(a[i]) == to_string(b[i]));
}
