// One line per acceptance criterion; exit status 0 iff every line is PASS.
// Criterion numbers given as arguments restrict the run to those.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "opalg/classifier.hpp"

using namespace opalg;

namespace {

using Clock = std::chrono::steady_clock;

const GeneratorSet kXY = pattern_generators();

SymPoly S(const std::string& s) { return parse_poly(s, kXY); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f s", s);
  return buf;
}

struct Family {
  std::string name, body;
  std::vector<std::string> ideal;
};

const std::vector<Family> kDtFamilies = {
    {"1", "b*(x [y] + [x] y) + c*[x] [y] + e*x y", {"b^2 - b - c*e"}},
    {"2", "c*e^2*y x + e*x y + c*[y] [x] - c*e*(y [x] + [y] x)", {}},
    {"3",
     "a00*x y + a10*[1] x y + a01*x y [1] + a11*[1] x y [1] + a20*[1] [1] x y + a02*x y [1] [1] + "
     "a21*[1] [1] x y [1] + a12*[1] x y [1] [1] + a22*[1] [1] x y [1] [1]",
     {}},
    {"4", "x [y] + [x] y + a*x [1] y + b*x y", {}},
    {"5", "[x] y + a*(x [1] y - x y [1])", {}},
    {"6", "x [y] + a*(x [1] y - [1] x y)", {}},
};

const std::vector<std::string> kRbtFamilies = {
    "x [y]",
    "[x] y",
    "y [x] + x [y]",
    "[y] x + [x] y",
    "x [y] + [x] y - [x y]",
    "x [y] + [x] y + lambda*x y",
    "x [y] - x [1] y + lambda*x y",
    "[x] y - x [1] y + lambda*x y",
    "x [y] + [x] y - x [1] y + lambda*x y",
    "x [y] + [x] y - x y [1] - x [1] y + lambda*x y",
    "x [y] + [x] y - [x y] - x [1] y + lambda*x y",
    "x [y] + [x] y - x [1] y - [1] x y + lambda*x y",
    "d*x [1] y + lambda*x y",
    "d*y [1] x + lambda*y x",
};

std::vector<MPoly> ideal_of(const Family& f) {
  std::vector<MPoly> out;
  for (const auto& g : f.ideal) out.push_back(parse_mpoly(g));
  return out;
}

TruncationBound criterion_bound() {
  TruncationBound b;
  b.max_breadth = 3;
  b.max_depth = 2;
  b.max_generators = 3;
  b.max_degree = 3;
  return b;
}

Outcome family_verification() {
  auto t0 = Clock::now();
  std::size_t accepted = 0;
  std::string failed;
  for (const auto& f : kDtFamilies) {
    TypeReport r = dt_check(S(f.body), ideal_of(f));
    if (r.accepted() && r.reduction.yes()) ++accepted;
    else failed += " " + f.name + "(" + to_string(r.verdict) + ")";
  }
  double t = seconds_since(t0);
  return {accepted == kDtFamilies.size() && t < 10,
          std::to_string(accepted) + "/6 families accepted with zero residue" + failed + ", " + fmt(t) + " (limit 10 s)"};
}

Outcome rejection_witness() {
  TypeReport r = dt_check(S("y [x]"));
  SymPoly want = parse_poly("u v [u] - v u [u]", GeneratorSet({"u", "v", "w"}));
  std::string seen;
  bool match = false;
  for (const auto& [label, s] : r.specializations) {
    if (s == want) {
      match = true;
      seen = label + ": " + to_factored_string(s);
    }
  }
  return {r.verdict == TypeVerdict::NotReducible && match,
          "y [x] " + to_string(r.verdict) + (match ? ", witness (" + seen + ")" : ", witness not found")};
}

Outcome degree_two_classification() {
  auto t0 = Clock::now();
  Classification cls = classify(build_ansatz(AnsatzMode::DT, 2, false, true));
  MatchReport m = match_catalog(cls, FamilyCatalog::differential(), 20, 1);
  double t = seconds_since(t0);
  std::size_t matched = 0, min_samples = 20, covered = 0, applicable = 0;
  for (const auto& c : m.components) {
    matched += c.samples > 0 && c.matched == c.samples;
    min_samples = std::min(min_samples, c.samples);
  }
  for (const auto& f : m.families) {
    applicable += f.applicable;
    covered += f.applicable && f.covered == f.samples;
  }
  bool ok = cls.audited() && !cls.components.empty() && m.mismatches() == 0 && matched == m.components.size() &&
            min_samples >= 20 && covered == applicable && applicable == 6 && t < 600;
  std::ostringstream os;
  os << cls.ansatz.terms.size() << "-term ansatz, " << cls.components.size() << " components (" << matched
     << " matched, " << cls.rejected.size() << " rejected by audit), " << covered << "/" << applicable
     << " families covered, >= " << min_samples << " samples each, " << m.mismatches() << " mismatches, " << fmt(t)
     << " (limit 600 s)";
  return {ok, os.str()};
}

Outcome rota_baxter_catalog() {
  auto t0 = Clock::now();
  TypeCheckOptions opts;
  opts.step_cap = 10000;
  std::size_t accepted = 0, inconclusive = 0;
  std::string failed;
  for (std::size_t i = 0; i < kRbtFamilies.size(); ++i) {
    TypeReport r = rbt_check(S(kRbtFamilies[i]), {}, opts);
    inconclusive += r.verdict == TypeVerdict::Inconclusive;
    if (r.accepted() && r.reduction.yes() && r.reduction.steps <= opts.step_cap) ++accepted;
    else failed += " " + std::to_string(i + 1) + "(" + to_string(r.verdict) + ")";
  }
  return {accepted == kRbtFamilies.size() && inconclusive == 0,
          std::to_string(accepted) + "/14 accepted with zero residue within 10^4 steps, " + std::to_string(inconclusive) +
              " inconclusive" + failed + ", " + fmt(seconds_since(t0))};
}

Outcome truncated_gsb_cdl() {
  auto t0 = Clock::now();
  bool ok = true;
  std::ostringstream os;
  for (const char* name : {"derivation", "weight:lambda"}) {
    GeneratorSystem sys(*builtin_pattern(name));
    GsbReport g = gsb_check_truncated(sys, criterion_bound());
    CdlReport c = cdl_direct_sum_check(sys, criterion_bound(), 100, 1);
    ok = ok && g.gsb() && g.nontrivial == 0 && c.ok() && c.ideal_samples == 100;
    os << name << ": " << g.trivial << "/" << g.intersection + g.including << " compositions trivial, CDL " << c.words
       << " words (" << c.not_in_irr_span << " outside Irr span, " << c.irr_moved << " Irr moved, " << c.ideal_nonzero
       << "/" << c.ideal_samples << " ideal samples nonzero); ";
  }
  double t = seconds_since(t0);
  os << fmt(t) << " (limit 300 s)";
  return {ok && t < 300, os.str()};
}

Outcome equivalence_bundle() {
  struct Case {
    std::string body;
    std::vector<MPoly> ideal;
  };
  std::vector<Case> suite;
  for (const auto& f : kDtFamilies) suite.push_back({f.body, ideal_of(f)});
  for (const char* bad : {"y [x]", "[y] x", "[x] [y] + x y", "x [y] + [x] y + [x] [y] + 2*x y"}) suite.push_back({bad, {}});
  std::size_t agree = 0;
  std::string disagreements;
  for (const auto& c : suite) {
    OpiPattern p = OpiPattern::differential(S(c.body), c.ideal);
    TypeReport t = dt_check(p.body, p.constraint_ideal);
    Rewriter rw(RuleSchema::from_pattern(p));
    ConfluenceBound cb;
    cb.stop_at_counterexample = true;
    ConfluenceReport lc = local_confluence_check(rw, cb);
    GsbReport g = gsb_check_truncated(GeneratorSystem(p), criterion_bound());
    bool a = t.accepted(), b = lc.confluent(), d = g.gsb();
    bool decided = t.verdict != TypeVerdict::Inconclusive && !lc.inconclusive() && (g.gsb() || g.nontrivial > 0);
    if (decided && a == b && b == d) ++agree;
    else disagreements += " [" + c.body + ": " + std::to_string(a) + std::to_string(b) + std::to_string(d) + "]";
  }
  return {agree == suite.size() && suite.size() >= 10,
          std::to_string(agree) + "/" + std::to_string(suite.size()) +
              " patterns with dt_check = local confluence = truncated GSB (6 accepted, 4 engineered failures)" +
              disagreements};
}

Outcome order_laws() {
  WordSampler ws{{Generator("u"), Generator("v"), Generator("w")}, 4, 3};
  PropertyReport r = check_monomial_order(OrderConfig{}, ws, 10000, 1);
  std::mt19937_64 rng(2);
  std::size_t samples = 0, violations = 0;
  auto check_family = [&](const OpiPattern& p) {
    for (int i = 0; i < 1000; ++i) {
      Word u = ws.nonunit(rng), v = ws.nonunit(rng);
      Word top = Word::bracket(u * v);
      SymPoly body = p.body_at(u, v);
      for (const auto& [m, c] : body.terms()) violations += !word_less(m, top);
      ++samples;
    }
  };
  for (const auto& f : kDtFamilies) check_family(OpiPattern::differential(S(f.body), ideal_of(f)));
  check_family(*builtin_pattern("derivation"));
  check_family(*builtin_pattern("weight:lambda"));
  return {r.ok() && r.samples == 10000 && violations == 0,
          std::to_string(r.samples) + " (q,u,v) triples, " + std::to_string(r.violation_count) +
              " monotonicity/unit violations; " + std::to_string(samples) + " [u v] > N(u,v) samples over 8 patterns, " +
              std::to_string(violations) + " violations"};
}

// Every subset of at most max_terms basis words, every coefficient vector over {0, 1, -1}.
struct OracleTally {
  std::size_t ansatze = 0, points = 0, mismatches = 0, inconclusive = 0;
};

void oracle_sweep(AnsatzMode mode, const std::vector<Word>& basis, std::size_t max_terms, UnitPolicy policy,
                  OracleTally& tally) {
  std::size_t n = basis.size();
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (!pick.empty()) {
      std::vector<Word> words;
      for (std::size_t i : pick) words.push_back(basis[i]);
      Ansatz a = make_ansatz(mode, words);
      ConstraintSystem cs = extract_constraints(a, policy);
      ++tally.ansatze;
      std::vector<int> val(words.size(), -1);
      auto vars = a.variables();
      for (;;) {
        Assignment at;
        for (std::size_t i = 0; i < vars.size(); ++i) at[vars[i]] = val[i];
        SymPoly body = a.specialize(at);
        OpiPattern p = mode == AnsatzMode::DT ? OpiPattern::differential(body) : OpiPattern::rota_baxter(body);
        Rewriter rw(RuleSchema::from_pattern(p, cs.unit_policy));
        Verdict v = reduces_to_zero(associativity_defect(p), rw);
        ++tally.points;
        if (v.kind == VerdictKind::Inconclusive) ++tally.inconclusive;
        else if (v.yes() != cs.satisfied_by(at)) ++tally.mismatches;
        std::size_t i = 0;
        while (i < val.size() && ++val[i] > 1) val[i++] = -1;
        if (i == val.size()) break;
      }
    }
    if (pick.size() == max_terms) return;
    for (std::size_t i = from; i < n; ++i) {
      pick.push_back(i);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
}

Outcome oracle_equivalence() {
  auto t0 = Clock::now();
  OracleTally tally;
  auto basis = [](AnsatzMode mode, bool units) {
    std::vector<Word> out;
    for (const auto& t : build_ansatz(mode, 1, units, true).terms) out.push_back(t.word);
    return out;
  };
  std::vector<Word> dt = basis(AnsatzMode::DT, true), rbt = basis(AnsatzMode::RBT, false);
  std::vector<Word> rbt_units = basis(AnsatzMode::RBT, true);
  oracle_sweep(AnsatzMode::DT, dt, 4, UnitPolicy::NonUnitOnly, tally);
  oracle_sweep(AnsatzMode::RBT, rbt, 4, UnitPolicy::NonUnitOnly, tally);
  // exhaustive search under unit rewriting is slow once [x y] is present, so three terms here
  oracle_sweep(AnsatzMode::RBT, rbt_units, 3, UnitPolicy::AllowUnits, tally);

  std::vector<MPoly> sys = {parse_mpoly("a^2 - a"), parse_mpoly("b^2 - b"), parse_mpoly("e*(a - b)")};
  std::vector<std::vector<MPoly>> expected = {
      {parse_mpoly("a"), parse_mpoly("b")},
      {parse_mpoly("a"), parse_mpoly("b - 1"), parse_mpoly("e")},
      {parse_mpoly("a - 1"), parse_mpoly("b"), parse_mpoly("e")},
      {parse_mpoly("a - 1"), parse_mpoly("b - 1")},
  };
  auto comps = solve_components(sys);
  std::size_t found = 0;
  for (const auto& want : expected) {
    GroebnerBasis gw = buchberger(want);
    for (const auto& c : comps) {
      if (!c.nonzero_assumptions.empty()) continue;
      GroebnerBasis gc = buchberger(c.ideal_generators());
      bool same = std::all_of(want.begin(), want.end(), [&](const MPoly& g) { return in_radical(g, gc); });
      auto gens = c.ideal_generators();
      same = same && std::all_of(gens.begin(), gens.end(), [&](const MPoly& g) { return in_radical(g, gw); });
      if (same) {
        ++found;
        break;
      }
    }
  }
  std::ostringstream os;
  os << tally.ansatze << " ansaetze (<= 4 of " << dt.size() << " DT words, <= 4 of " << rbt.size()
     << " unit-free RBT words, <= 3 of " << rbt_units.size() << " RBT words under unit rewriting), " << tally.points
     << " points over {0,+-1}: " << tally.mismatches << " mismatches, " << tally.inconclusive << " inconclusive; "
     << comps.size() << " components for {a^2-a, b^2-b, e(a-b)}, " << found << "/4 expected; " << fmt(seconds_since(t0));
  return {tally.mismatches == 0 && tally.inconclusive == 0 && comps.size() == 4 && found == 4, os.str()};
}

Outcome buchberger_correctness() {
  CVar x("x"), y("y");
  MonomialOrder lex{MonomialOrder::Kind::Lex, {x, y}};
  GroebnerBasis gb = buchberger({parse_mpoly("x^2 - 1"), parse_mpoly("x*y - 1")}, lex);
  std::vector<MPoly> derived = {parse_mpoly("x - y"), parse_mpoly("y^2 - 1")};
  bool basis_ok = gb.polys == derived;
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> coef(-5, 5), expo(0, 3);
  auto random_poly = [&] {
    MPoly p;
    for (int i = 0; i < 4; ++i)
      p.add_term(Monomial::var(x, expo(rng)) * Monomial::var(y, expo(rng)), coef(rng));
    return p;
  };
  std::size_t members_zero = 0, nonmembers_nonzero = 0, consistent = 0;
  for (int i = 0; i < 1000; ++i) {
    MPoly m = random_poly() * parse_mpoly("x^2 - 1") + random_poly() * parse_mpoly("x*y - 1");
    members_zero += nf_mod_ideal(m, gb).is_zero();
    // remainders modulo the basis are spanned by 1 and y
    MPoly r;
    while (r.is_zero()) r = MPoly(coef(rng)) + MPoly::var(y).scaled(coef(rng));
    MPoly q = m + r;
    MPoly nq = nf_mod_ideal(q, gb);
    nonmembers_nonzero += !nq.is_zero();
    consistent += nq == reduce(q, derived, lex);
  }
  return {basis_ok && members_zero == 1000 && nonmembers_nonzero == 1000 && consistent == 1000,
          std::string("basis ") + (basis_ok ? "{x - y, y^2 - 1}" : "differs") + ", " + std::to_string(members_zero) +
              "/1000 members reduce to 0, " + std::to_string(nonmembers_nonzero) + "/1000 non-members nonzero, " +
              std::to_string(consistent) + "/1000 normal forms match the derived basis"};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  struct Criterion {
    const char* title;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"family verification", family_verification},
      {"rejection witness", rejection_witness},
      {"degree-2 classification", degree_two_classification},
      {"Rota-Baxter catalog", rota_baxter_catalog},
      {"truncated GSB and CDL", truncated_gsb_cdl},
      {"equivalence bundle", equivalence_bundle},
      {"order laws", order_laws},
      {"oracle equivalence", oracle_equivalence},
      {"Buchberger correctness", buchberger_correctness},
  };
  int failures = 0;
  int n = 0;
  for (const auto& c : criteria) {
    ++n;
    if (!only.empty() && !only.count(n)) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("criterion %d %s: %s: %s\n", n, o.pass ? "PASS" : "FAIL", c.title, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
