#include <doctest.h>

#include <random>

#include "opalg/rewrite.hpp"

using namespace opalg;

namespace {

const GeneratorSet kOpen = GeneratorSet::open();
// identifiers outside a closed set are coefficient variables
const GeneratorSet kXY({"x", "y", "z", "u", "v", "w"});

SymPoly S(const char* s) { return parse_poly(s, kXY); }

RatPoly random_poly(std::mt19937_64& rng, const WordSampler& ws, int terms = 3) {
  std::uniform_int_distribution<int> coef(-3, 3);
  RatPoly p;
  for (int i = 0; i < terms; ++i) p.add_term(ws.word(rng, 2), coef(rng));
  return p;
}

WordSampler sampler() { return {{Generator("x"), Generator("y"), Generator("z")}, 3, 2}; }

}  // namespace

TEST_CASE("parse and print") {
  CHECK(to_string(S("[x y] - [x] y - x [y]")) == to_string(S("- x [y] + [x y] - [x] y")));
  CHECK(to_string(S("(b^2 - b)*x [y]")) == "(b^2 - b)*x [y]");
  CHECK(S("2*x - x - x").is_zero());
  CHECK(S("1").terms().begin()->first.is_unit());
  CHECK_THROWS_AS(S("[x"), ParseError);
}

TEST_CASE("ring axioms on random samples") {
  std::mt19937_64 rng(5);
  auto ws = sampler();
  for (int i = 0; i < 300; ++i) {
    RatPoly a = random_poly(rng, ws), b = random_poly(rng, ws), c = random_poly(rng, ws);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a + b) * c == a * c + b * c);
    CHECK(a * RatPoly::one() == a);
    CHECK(RatPoly::one() * a == a);
    CHECK((a - a).is_zero());
    CHECK((a + b).bracket() == a.bracket() + b.bracket());
    CHECK(a.scaled(3).bracket() == a.bracket().scaled(3));
  }
}

TEST_CASE("leading term of a two-star substitution") {
  std::mt19937_64 rng(9);
  auto ws = sampler();
  OrderConfig ord;
  std::size_t checked = 0;
  for (int i = 0; i < 500; ++i) {
    Word q = ws.context(rng).word();
    // put a second placeholder next to a random atom of the context
    Word two = q.replace(Word::kStar, Word::star1() * ws.word(rng, 1) * Word::star2());
    if (std::uniform_int_distribution<int>(0, 1)(rng)) two = q.replace(Word::kStar, Word::bracket(Word::star1()) * Word::star2());
    TwoStarWord tq(two);
    RatPoly s = random_poly(rng, ws), t = random_poly(rng, ws);
    if (s.is_zero() || t.is_zero()) continue;
    RatPoly sub = poly_substitute2(tq, s, t);
    if (sub.is_zero()) continue;
    CHECK(sub.leading(ord).first == substitute2(tq, s.leading(ord).first, t.leading(ord).first));
    ++checked;
  }
  CHECK(checked > 400);
}

TEST_CASE("symbolic coefficients") {
  SymPoly p = S("b*x [y] + c*[x] y");
  SymPoly q = p.map_coeffs([](const MPoly& c) { return c.substitute(CVar("b"), MPoly(2)); });
  CHECK(to_string(q) == to_string(S("2*x [y] + c*[x] y")));
  CHECK(lift(lower(S("3*x - 1/2*[y]"))) == S("3*x - 1/2*[y]"));
  CHECK_THROWS(lower(p));
}

TEST_CASE("derivation OPI") {
  OpiPattern d = *builtin_pattern("derivation");
  CHECK(d.phi() == S("[x y] - [x] y - x [y]"));
  CHECK(d.phi().leading().first == parse_word("[x y]", kOpen));
  CHECK(d.phi().leading().second == MPoly(1));
  CHECK(instantiate_opi(d, parse_word("u", kOpen), parse_word("v", kOpen)) == S("[u v] - [u] v - u [v]"));
  OpiPattern rb = *builtin_pattern("rota-baxter");
  CHECK(rb.phi() == S("[x] [y] - [x [y]] - [[x] y] - lambda*[x y]"));
  CHECK(to_string(d.body_at(S("u + v"), S("w"))) == to_string(S("[u] w + [v] w + u [w] + v [w]")));
}

TEST_CASE("linearity and reduced forms") {
  CHECK(is_totally_linear(S("x [y] + [x] y")));
  CHECK(!is_totally_linear(S("x x [y]")));
  CHECK(!is_totally_linear(S("x")));
  CHECK(is_drf(parse_word("x [y] [[1]] [[y]]", kOpen)));
  CHECK(!is_drf(parse_word("[x y]", kOpen)));
  CHECK(!is_drf(parse_word("[[[1] y]]", kOpen)));
  CHECK(is_rbrf(parse_word("[x [y]]", kOpen)));
  CHECK(!is_rbrf(parse_word("[x] [y]", kOpen)));
  CHECK(operator_degree(parse_word("[[x] [1]] y", kOpen)) == 3);
}

TEST_CASE("rule schemas validate the pattern body") {
  auto dt = [](const char* s) { return RuleSchema::from_pattern(parse_pattern(s, OpiPattern::Kind::DifferentialType)); };
  auto rbt = [](const char* s) { return RuleSchema::from_pattern(parse_pattern(s, OpiPattern::Kind::RotaBaxterType)); };
  CHECK_THROWS_AS(dt("x x"), SchemaViolation);
  CHECK_THROWS_AS(dt("[x y]"), SchemaViolation);
  CHECK_THROWS_AS(rbt("[x] [y]"), SchemaViolation);
  CHECK_NOTHROW(rbt("x [y] + [x] y - [x y]"));
  CHECK_THROWS_AS(RuleSchema::from_pattern(*builtin_pattern("derivation"), UnitPolicy::AllowUnits), SchemaViolation);
  CHECK_NOTHROW(parse_pattern("weight:2", OpiPattern::Kind::DifferentialType));
  CHECK_NOTHROW(parse_pattern("y [x]", OpiPattern::Kind::DifferentialType));
}
