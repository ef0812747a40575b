#include <doctest.h>

#include "opalg/gsb.hpp"

using namespace opalg;

namespace {

const GeneratorSet kGens({"x", "y", "z", "u", "v", "w"});

SymPoly S(const char* s) { return parse_poly(s, kGens); }
Word W(const char* s) { return parse_word(s, kGens); }

OpiPattern dt(const char* s) { return parse_pattern(s, OpiPattern::Kind::DifferentialType); }

TruncationBound bound(std::size_t breadth, std::size_t depth, std::size_t gens = 3, std::size_t degree = 3) {
  TruncationBound b;
  b.max_breadth = breadth;
  b.max_depth = depth;
  b.max_generators = gens;
  b.max_degree = degree;
  return b;
}

}  // namespace

TEST_CASE("instances are monic with leading word [u v]") {
  GeneratorSystem sys(dt("weight:lambda"));
  for (const char* u : {"u", "[u]", "u [1]", "[[v]] u"})
    for (const char* v : {"v", "[w] v", "[1]"}) {
      SymPoly f = sys.instance(W(u), W(v));
      auto [lw, lc] = f.leading();
      CHECK(lw == Word::bracket(W(u) * W(v)));
      CHECK(lc == MPoly(1));
    }
}

TEST_CASE("composition shapes") {
  GeneratorSystem sys(dt("derivation"));
  SymPoly f = sys.instance(W("u"), W("v"));
  SymPoly g = sys.instance(W("[u v]"), W("w"));
  auto comps = compositions(g, f);
  REQUIRE(!comps.empty());
  for (const auto& c : comps) {
    Word lf = c.f.leading().first, lg = c.g.leading().first;
    if (c.kind == CompositionRecord::Kind::Including) {
      CHECK(!occurrences(lf, lg).empty());
      CHECK(c.w == lf);
    } else {
      CHECK(c.w.breadth() < lf.breadth() + lg.breadth());
    }
  }
  // two top-level atoms never overlap inside a single bracket word
  auto self = compositions(f, f);
  for (const auto& c : self) CHECK(c.kind == CompositionRecord::Kind::Including);
}

TEST_CASE("derivation is a Groebner-Shirshov basis at a small bound") {
  GsbReport r = gsb_check_truncated(GeneratorSystem(dt("derivation")), bound(2, 2));
  CHECK(r.gsb());
  CHECK(r.nontrivial == 0);
  CHECK(r.intersection + r.including == r.trivial);
  CHECK(r.leading_words > 0);
}

TEST_CASE("y [x] fails with an explicit composition") {
  GsbReport r = gsb_check_truncated(GeneratorSystem(dt("y [x]")), bound(3, 2));
  CHECK(!r.gsb());
  CHECK(r.nontrivial > 0);
  REQUIRE(!r.failures.empty());
  const auto& f = r.failures.front();
  CHECK(!f.trivial);
  CHECK(!f.residue.is_zero());
  for (const auto& [m, c] : f.residue.terms()) CHECK(is_drf(m));
}

TEST_CASE("Irr(S) for the derivation over one generator") {
  GeneratorSystem sys(dt("derivation"));
  IrrReport r = irr_enumerate(sys, {Generator("z")}, bound(2, 2));
  CHECK(r.words.size() == 31);
  CHECK(r.delta_words.size() == 13);
  CHECK(r.unit_surplus.size() == 18);
  CHECK(r.words.size() == r.delta_words.size() + r.unit_surplus.size());
  auto all = enumerate_words({Generator("z")}, bound(2, 2));
  std::size_t irreducible = 0;
  for (const Word& w : all) irreducible += find_redexes(w, sys.schema).empty();
  CHECK(irreducible == r.words.size());
  CHECK(std::find(r.words.begin(), r.words.end(), W("[z z]")) == r.words.end());
  CHECK(to_delta_string(W("[[z]] [z] z")) == "z^(2) z^(1) z");
  Rewriter rw(sys.schema);
  CHECK(to_delta_string(rw.normal_form(W("[z z]")).value) == "z^(1) z + z z^(1)");
}

TEST_CASE("the free operator agrees with the normal form of a bracket") {
  for (const char* name : {"derivation", "weight:lambda", "hom", "[x] y + x [1] y - x y [1]"}) {
    OpiPattern p = dt(name);
    Rewriter rw(RuleSchema::from_pattern(p));
    IrrReport r = irr_enumerate(GeneratorSystem(p), {Generator("z"), Generator("y")}, bound(3, 2, 2, 3));
    for (const Word& u : r.delta_words) CHECK_MESSAGE(free_dt_operator_nf(u, p) == rw.normal_form(Word::bracket(u)).value, name);
  }
}

TEST_CASE("differential-type verdicts") {
  CHECK(dt_check(S("[x] y + x [y]")).accepted());
  CHECK(dt_check(S("b*(x [y] + [x] y) + c*[x] [y] + e*x y"), {parse_mpoly("b^2 - b - c*e")}).accepted());
  CHECK(!dt_check(S("b*(x [y] + [x] y) + c*[x] [y] + e*x y")).accepted());
  CHECK(dt_check(S("x [y] + a*(x [1] y - [1] x y)")).accepted());
  CHECK(dt_check(S("x x")).verdict == TypeVerdict::NotTotallyLinear);
  CHECK(dt_check(S("[x y]")).verdict == TypeVerdict::NotDRF);
  TypeReport r = dt_check(S("y [x]"));
  CHECK(r.verdict == TypeVerdict::NotReducible);
  bool found = false;
  for (const auto& [label, s] : r.specializations)
    if (s == S("u v [u] - v u [u]")) found = true;
  CHECK(found);
  CHECK(to_factored_string(S("u v [u] - v u [u]")) == "(u v - v u) [u]");
}

TEST_CASE("Rota-Baxter-type verdicts") {
  CHECK(rbt_check(S("x [y] + [x] y + lambda*x y")).accepted());
  CHECK(rbt_check(S("x [y]")).accepted());
  CHECK(rbt_check(S("x [y] + [x] y - [x y]")).accepted());
  CHECK(rbt_check(S("[x] [y]")).verdict == TypeVerdict::NotRBRF);
  CHECK(!rbt_check(S("y [x]")).accepted());
  CHECK(associativity_defect(*builtin_pattern("average")) == S("u [v] [w] - u [v [w]]"));
  CHECK(associativity_defect(*builtin_pattern("derivation")) == S("[u v] w + u v [w] - [u] v w - u [v w]"));
}

TEST_CASE("direct sum decomposition at a small bound") {
  CdlReport r = cdl_direct_sum_check(GeneratorSystem(dt("derivation")), bound(2, 2, 2, 3), 30);
  CHECK(r.ok());
  CHECK(r.words > r.irr_words);
  CHECK(r.ideal_samples == 30);
}
