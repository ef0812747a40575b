#include "opalg/classifier.hpp"

#include <algorithm>
#include <set>

namespace opalg {

std::string to_string(AnsatzMode m) { return m == AnsatzMode::DT ? "dt" : "rbt"; }

AnsatzMode parse_ansatz_mode(const std::string& s) {
  if (s == "dt") return AnsatzMode::DT;
  if (s == "rbt") return AnsatzMode::RBT;
  throw std::invalid_argument("unknown type '" + s + "' (expected dt or rbt)");
}

SymPoly Ansatz::body() const {
  SymPoly p;
  for (const auto& t : terms) p.add_term(t.word, MPoly::var(t.coeff));
  return p;
}

std::vector<CVar> Ansatz::variables() const {
  std::vector<CVar> out;
  for (const auto& t : terms) out.push_back(t.coeff);
  return out;
}

SymPoly Ansatz::specialize(const Assignment& at) const {
  SymPoly p;
  for (const auto& t : terms)
    if (auto it = at.find(t.coeff); it != at.end()) p.add_term(t.word, MPoly(it->second));
  return p;
}

std::optional<Assignment> Ansatz::coordinates(const SymPoly& p) const {
  Assignment at;
  for (const auto& t : terms) at[t.coeff] = 0;
  for (const auto& [w, c] : p.terms()) {
    auto it = std::find_if(terms.begin(), terms.end(), [&](const AnsatzTerm& t) { return t.word == w; });
    if (it == terms.end() || !c.is_constant()) return std::nullopt;
    at[it->coeff] = c.constant_term();
  }
  return at;
}

OpiPattern Ansatz::pattern() const {
  return mode == AnsatzMode::DT ? OpiPattern::differential(body()) : OpiPattern::rota_baxter(body());
}

namespace {

// A bracket enclosing no generator always contains the token pair "[ ]".
bool has_unit_bracket(const Word& w) {
  const auto& t = w.tokens();
  for (std::size_t i = 1; i < t.size(); ++i)
    if (t[i - 1] == Word::kOpen && t[i] == Word::kClose) return true;
  return false;
}

bool x_before_y(const Word& w) {
  const auto& t = w.tokens();
  auto x = std::find(t.begin(), t.end(), pattern_x().id());
  auto y = std::find(t.begin(), t.end(), pattern_y().id());
  return x < y;
}

// Depth of the brackets around each generator occurrence.
std::size_t generator_depth(const Word& w) {
  std::size_t depth = 0, best = 0;
  for (auto t : w.tokens()) {
    if (t == Word::kOpen) ++depth;
    else if (t == Word::kClose) --depth;
    else best = std::max(best, depth);
  }
  return best;
}

std::string coefficient_name(const Word& w) {
  auto atoms = w.atoms();
  if (atoms.size() != 2) return {};
  std::size_t i = 0, j = 0;
  Word a = atoms[0], b = atoms[1];
  while (a.is_bracket_atom()) a = a.inner(), ++i;
  while (b.is_bracket_atom()) b = b.inner(), ++j;
  if (a.size() != 1 || b.size() != 1) return {};
  std::string prefix = a.tokens()[0] == pattern_x().id() ? "a" : "b";
  return prefix + std::to_string(i) + std::to_string(j);
}

}  // namespace

Ansatz build_ansatz(AnsatzMode mode, std::size_t d, bool units, bool reversed) {
  TruncationBound bound{2 + d, d, 2, 2};
  std::vector<Word> words;
  for (const Word& w : enumerate_words({pattern_x(), pattern_y()}, bound)) {
    if (w.count(pattern_x().id()) != 1 || w.count(pattern_y().id()) != 1) continue;
    if (!reversed && !x_before_y(w)) continue;
    bool unit = has_unit_bracket(w);
    if (unit && !units) continue;
    std::size_t brackets = operator_degree(w);
    if (mode == AnsatzMode::DT) {
      if (!is_drf(w) || generator_depth(w) > d || (unit && brackets > d)) continue;
    } else {
      if (!is_rbrf(w) || brackets > d) continue;
    }
    words.push_back(w);
  }
  std::stable_sort(words.begin(), words.end(), [](const Word& a, const Word& b) {
    bool ra = !x_before_y(a), rb = !x_before_y(b);
    if (ra != rb) return rb;
    if (has_unit_bracket(a) != has_unit_bracket(b)) return has_unit_bracket(b);
    return operator_degree(a) < operator_degree(b);
  });
  Ansatz a;
  a.mode = mode;
  std::size_t k = 0;
  for (const Word& w : words) {
    std::string name = coefficient_name(w);
    if (name.empty()) name = "k" + std::to_string(++k);
    a.terms.push_back({w, CVar(name)});
  }
  return a;
}

Ansatz make_ansatz(AnsatzMode mode, const std::vector<Word>& words, const std::string& prefix) {
  Ansatz a;
  a.mode = mode;
  for (std::size_t i = 0; i < words.size(); ++i) a.terms.push_back({words[i], CVar(prefix + std::to_string(i + 1))});
  return a;
}

bool ConstraintSystem::satisfied_by(const Assignment& at) const {
  return std::all_of(equations.begin(), equations.end(), [&](const MPoly& e) { return e.partial_evaluate(at).is_zero(); });
}

ConstraintSystem extract_constraints(const Ansatz& a, UnitPolicy policy, std::size_t step_cap) {
  ConstraintSystem cs;
  cs.unit_policy = policy;
  if (a.terms.empty()) return cs;
  OpiPattern p = a.pattern();
  ReductionOptions ro;
  ro.step_cap = step_cap;
  ro.strategy = cs.strategy;
  RuleSchema schema = a.mode == AnsatzMode::DT ? RuleSchema::sigma(p.body) : RuleSchema::pi(p.body, {}, policy);
  Rewriter rw(schema, ro);
  auto nf = rw.normal_form(associativity_defect(p));
  cs.steps = nf.trace.step_count;
  if (!nf.ok()) throw ReductionBudgetExceeded("defect reduction exceeded " + std::to_string(step_cap) + " steps");
  std::set<MPoly> seen;
  for (const auto& [w, c] : nf.value.terms()) {
    MPoly e = c.normalized();
    bool resolved = a.mode == AnsatzMode::DT || is_rbrf(w);
    if (!resolved) {
      cs.unresolved.push_back(e);
      cs.unresolved_provenance.push_back(w);
    } else if (seen.insert(e).second) {
      cs.equations.push_back(e);
      cs.provenance.push_back(w);
    }
  }
  return cs;
}

namespace {

Assignment complete(const Assignment& partial, const Ansatz& a, std::mt19937_64* rng) {
  Assignment at = partial;
  for (CVar v : a.variables())
    if (!at.contains(v)) at[v] = rng ? random_rational(*rng) : Rational(1);
  return at;
}

TypeReport audit(const Ansatz& a, const SymPoly& n) {
  return a.mode == AnsatzMode::DT ? dt_check(n) : rbt_check(n);
}

}  // namespace

Classification classify(const Ansatz& a, std::optional<UnitPolicy> policy, const SolveBudget& budget) {
  Classification cls;
  cls.ansatz = a;
  UnitPolicy pol = policy.value_or(a.mode == AnsatzMode::RBT ? UnitPolicy::AllowUnits : UnitPolicy::NonUnitOnly);
  cls.constraints = extract_constraints(a, pol);
  for (SolutionComponent& comp : solve_components(cls.constraints.equations, budget)) {
    ClassifiedComponent cc;
    cc.point = complete(comp.representative, a, nullptr);
    cc.representative = a.specialize(cc.point);
    cc.audit = audit(a, cc.representative);
    for (std::size_t i = 0; i < cls.constraints.unresolved.size(); ++i)
      if (!cls.constraints.unresolved[i].partial_evaluate(cc.point).is_zero()) cc.open_unresolved.push_back(i);
    cc.component = std::move(comp);
    (cc.audit.accepted() ? cls.components : cls.rejected).push_back(std::move(cc));
  }
  return cls;
}

std::optional<Assignment> sample_point(const ClassifiedComponent& c, const Ansatz& a, std::mt19937_64& rng) {
  auto pt = c.component.sample(rng);
  if (!pt) return std::nullopt;
  return complete(*pt, a, &rng);
}

std::vector<CVar> CatalogFamily::parameters() const {
  std::set<CVar> vars;
  for (const auto& [w, c] : body.terms())
    for (CVar v : c.variables()) vars.insert(v);
  for (const MPoly& g : ideal)
    for (CVar v : g.variables()) vars.insert(v);
  return {vars.begin(), vars.end()};
}

bool CatalogFamily::contains(const SymPoly& p) const {
  std::vector<MPoly> eqs = ideal;
  for (const auto& [w, c] : body.terms()) eqs.push_back(c - p.coeff(w));
  for (const auto& [w, c] : p.terms())
    if (body.coeff(w).is_zero()) eqs.push_back(c);
  return !solve_components(eqs).empty();
}

namespace {

SymPoly dt(const std::string& s) { return parse_poly(s, pattern_generators()); }

CatalogFamily family(std::string name, AnsatzMode mode, const std::string& body, std::vector<std::string> ideal = {}) {
  CatalogFamily f{std::move(name), mode, dt(body), {}};
  for (const auto& g : ideal) f.ideal.push_back(parse_mpoly(g));
  return f;
}

}  // namespace

FamilyCatalog FamilyCatalog::differential(std::size_t max_support) {
  FamilyCatalog cat;
  auto D = AnsatzMode::DT;
  cat.families.push_back(family("dt1", D, "b*(x [y] + [x] y) + c*[x] [y] + e*x y", {"b^2 - b - c*e"}));
  cat.families.push_back(family("dt2", D, "c*e^2*y x + e*x y + c*[y] [x] - c*e*(y [x] + [y] x)"));
  std::string third;
  for (std::size_t i = 0; i <= max_support; ++i)
    for (std::size_t j = 0; j <= max_support; ++j) {
      std::string term = "a" + std::to_string(i) + std::to_string(j) + "*";
      for (std::size_t k = 0; k < i; ++k) term += "[1] ";
      term += "x y";
      for (std::size_t k = 0; k < j; ++k) term += " [1]";
      third += (third.empty() ? "" : " + ") + term;
    }
  cat.families.push_back(family("dt3", D, third));
  cat.families.push_back(family("dt4", D, "x [y] + [x] y + a*x [1] y + b*x y"));
  cat.families.push_back(family("dt5", D, "[x] y + a*(x [1] y - x y [1])"));
  cat.families.push_back(family("dt6", D, "x [y] + a*(x [1] y - [1] x y)"));
  return cat;
}

FamilyCatalog FamilyCatalog::rota_baxter() {
  FamilyCatalog cat;
  auto R = AnsatzMode::RBT;
  const char* bodies[] = {
      "x [y]",
      "[x] y",
      "x [y] + y [x]",
      "[x] y + [y] x",
      "x [y] + [x] y - [x y]",
      "x [y] + [x] y + lambda*x y",
      "x [y] - x [1] y + lambda*x y",
      "[x] y - x [1] y + lambda*x y",
      "x [y] + [x] y - x [1] y + lambda*x y",
      "x [y] + [x] y - x y [1] - x [1] y + lambda*x y",
      "x [y] + [x] y - x [1] y - [x y] + lambda*x y",
      "x [y] + [x] y - x [1] y - [1] x y + lambda*x y",
      "d*x [1] y + lambda*x y",
      "d*y [1] x + lambda*y x",
  };
  int i = 0;
  for (const char* b : bodies) cat.families.push_back(family("rbt" + std::to_string(++i), R, b));
  return cat;
}

std::size_t MatchReport::mismatches() const {
  std::size_t n = 0;
  for (const auto& c : components) n += c.samples - c.matched + (c.samples == 0 ? 1 : 0);
  for (const auto& f : families)
    if (f.applicable) n += f.samples - f.covered + (f.samples == 0 ? 1 : 0);
  return n;
}

namespace {

SymPoly at_point(const SymPoly& p, const Assignment& at) {
  return p.map_coeffs([&](const MPoly& c) { return c.partial_evaluate(at); });
}

}  // namespace

MatchReport match_catalog(const Classification& cls, const FamilyCatalog& catalog, std::size_t samples,
                          std::uint64_t seed) {
  MatchReport rep;
  std::mt19937_64 rng(seed);
  const Ansatz& a = cls.ansatz;
  std::vector<const CatalogFamily*> fams;
  for (const auto& f : catalog.families)
    if (f.mode == a.mode) fams.push_back(&f);

  for (std::size_t i = 0; i < cls.components.size(); ++i) {
    ComponentMatch m;
    m.component = i;
    std::set<std::string> names;
    for (std::size_t s = 0; s < samples; ++s) {
      auto pt = sample_point(cls.components[i], a, rng);
      if (!pt) continue;
      ++m.samples;
      SymPoly n = a.specialize(*pt);
      bool hit = false;
      for (const CatalogFamily* f : fams)
        if (f->contains(n)) hit = true, names.insert(f->name);
      if (hit) ++m.matched;
      else if (m.unmatched.size() < 4) m.unmatched.push_back(n);
    }
    m.families.assign(names.begin(), names.end());
    rep.components.push_back(std::move(m));
  }

  std::set<Word> basis;
  for (const auto& t : a.terms) basis.insert(t.word);
  for (const CatalogFamily* f : fams) {
    FamilyCoverage cov;
    cov.family = f->name;
    // Specializations of the family inside the ansatz span.
    std::vector<MPoly> eqs = f->ideal;
    for (const auto& [w, c] : f->body.terms())
      if (!basis.contains(w)) eqs.push_back(c);
    auto comps = solve_components(eqs);
    cov.applicable = !comps.empty();
    auto params = f->parameters();
    for (const SolutionComponent& comp : comps) {
      for (std::size_t s = 0; s < samples; ++s) {
        auto pt = comp.sample(rng);
        if (!pt) continue;
        for (CVar v : params)
          if (!pt->contains(v)) (*pt)[v] = random_rational(rng);
        ++cov.samples;
        SymPoly n = at_point(f->body, *pt);
        auto coords = a.coordinates(n);
        bool hit = coords && std::any_of(cls.components.begin(), cls.components.end(), [&](const ClassifiedComponent& c) {
                     return c.component.contains(*coords);
                   });
        if (hit) ++cov.covered;
        else if (cov.uncovered.size() < 4) cov.uncovered.push_back(n);
      }
    }
    rep.families.push_back(std::move(cov));
  }
  return rep;
}

}  // namespace opalg
