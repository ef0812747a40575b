#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <sstream>

#include "opalg/classifier.hpp"

using namespace opalg;
using Json = nlohmann::ordered_json;

namespace {

constexpr const char* kSchema = "opalg-report/1";

enum Exit { kOk = 0, kParse = 1, kStepCap = 2, kRejected = 3, kInconclusive = 4, kResource = 5 };

struct RunConfig {
  std::string gens;
  std::string order = "skeleton";
  std::string strategy = "lo";
  std::size_t step_cap = 100000;
  std::string unit_policy;
  std::string format = "text";
  std::string dt, rbt;
  std::vector<std::string> constraints;
  std::string type = "dt";
  std::size_t degree = 2;
  bool units = false, reversed = true, trace = false, show_constraints = false;
  std::size_t budget = 0;
  std::size_t samples = 20;
  std::uint64_t seed = 1;
  std::string bound;
  std::string input;
};

bool json_out(const RunConfig& c) { return c.format == "json"; }

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

GeneratorSet generator_set(const RunConfig& c) {
  if (c.gens.empty()) return GeneratorSet::open();
  std::vector<std::string> names;
  std::stringstream ss(c.gens);
  for (std::string g; std::getline(ss, g, ',');)
    if (!g.empty()) names.push_back(g);
  return GeneratorSet(names);
}

OrderConfig order_config(const RunConfig& c) {
  auto mode = parse_word_comparison(c.order);
  if (!mode) throw std::invalid_argument("unknown order '" + c.order + "'");
  return c.gens.empty() ? OrderConfig{{}, *mode} : OrderConfig::with_generators(generator_set(c), *mode);
}

std::vector<MPoly> constraint_ideal(const RunConfig& c) {
  std::vector<MPoly> out;
  for (const auto& s : c.constraints) out.push_back(parse_mpoly(s));
  return out;
}

OpiPattern pattern_from(const RunConfig& c) {
  if (!c.dt.empty() && !c.rbt.empty()) throw std::invalid_argument("give only one of --dt and --rbt");
  if (c.dt.empty() && c.rbt.empty()) throw std::invalid_argument("a pattern is required (--dt or --rbt)");
  if (!c.dt.empty()) return parse_pattern(c.dt, OpiPattern::Kind::DifferentialType, constraint_ideal(c));
  return parse_pattern(c.rbt, OpiPattern::Kind::RotaBaxterType, constraint_ideal(c));
}

UnitPolicy unit_policy(const RunConfig& c, UnitPolicy fallback) {
  if (c.unit_policy.empty()) return fallback;
  auto p = parse_unit_policy(c.unit_policy);
  if (!p) throw std::invalid_argument("unknown unit policy '" + c.unit_policy + "'");
  return *p;
}

TruncationBound bound_from(const RunConfig& c) {
  TruncationBound b;
  if (c.bound.empty()) return b;
  std::vector<std::size_t> v;
  std::stringstream ss(c.bound);
  for (std::string part; std::getline(ss, part, ',');) {
    std::size_t used = 0;
    long n = std::stol(part, &used);
    if (used != part.size() || n < 0) throw std::invalid_argument("bad --bound '" + c.bound + "'");
    v.push_back(static_cast<std::size_t>(n));
  }
  if (v.size() < 2 || v.size() > 4) throw std::invalid_argument("--bound expects B,D[,G[,deg]]");
  b.max_breadth = v[0];
  b.max_depth = v[1];
  if (v.size() > 2) b.max_generators = v[2];
  if (v.size() > 3) b.max_degree = v[3];
  if (b.max_breadth == 0) throw std::invalid_argument("--bound breadth must be positive");
  return b;
}

Json bound_json(const TruncationBound& b) {
  return {{"breadth", b.max_breadth}, {"depth", b.max_depth}, {"generators", b.max_generators}, {"degree", b.max_degree}};
}

std::string status_name(ReductionStatus s) {
  return s == ReductionStatus::NormalForm ? "normal-form" : "step-cap-exceeded";
}

int cmd_nf(const RunConfig& c) {
  GeneratorSet gens = generator_set(c);
  SymPoly input = parse_poly(c.input, gens);
  OpiPattern p = pattern_from(c);
  auto strategy = parse_strategy(c.strategy);
  if (!strategy) throw std::invalid_argument("unknown strategy '" + c.strategy + "'");
  ReductionOptions ro;
  ro.strategy = *strategy;
  ro.step_cap = c.step_cap;
  ro.trace = c.trace;
  Rewriter rw(RuleSchema::from_pattern(p, unit_policy(c, UnitPolicy::NonUnitOnly)), ro);
  auto nf = rw.normal_form(input);
  if (json_out(c)) {
    Json j{{"schema", kSchema}, {"command", "nf"}, {"input", to_string(input)}, {"pattern", to_string(p)},
           {"normal_form", to_string(nf.value)}, {"status", status_name(nf.trace.status)},
           {"steps", nf.trace.step_count}};
    if (c.trace) {
      Json steps = Json::array();
      for (const auto& s : nf.trace.steps)
        steps.push_back(Json{{"word", to_string(s.word)}, {"redex", to_string(s.redex.a) + " | " + to_string(s.redex.b)},
                             {"before", to_string(s.before)}, {"after", to_string(s.after)}});
      j["trace"] = steps;
    }
    emit(j);
  } else {
    if (c.trace) std::cout << render_trace(nf.trace);
    std::cout << to_string(nf.value) << "\n";
    if (!nf.ok()) std::cout << "status: step cap of " << c.step_cap << " exceeded\n";
  }
  return nf.ok() ? kOk : kStepCap;
}

int verdict_exit(TypeVerdict v) {
  switch (v) {
    case TypeVerdict::Accepted: return kOk;
    case TypeVerdict::Inconclusive: return kInconclusive;
    default: return kRejected;
  }
}

int cmd_verify(const RunConfig& c) {
  auto mode = parse_ansatz_mode(c.type);
  SymPoly body = parse_poly(c.input, pattern_generators());
  OpiPattern p = mode == AnsatzMode::DT ? OpiPattern::differential(body, constraint_ideal(c))
                                        : OpiPattern::rota_baxter(body, constraint_ideal(c));
  TypeCheckOptions opts;
  opts.step_cap = c.step_cap;
  if (c.budget) opts.tree_budget = c.budget;
  if (!c.unit_policy.empty()) opts.unit_fallback = unit_policy(c, UnitPolicy::NonUnitOnly) != UnitPolicy::NonUnitOnly;
  TypeReport r = type_check(p, opts);
  if (json_out(c)) {
    Json spec = Json::array();
    for (const auto& [label, s] : r.specializations) spec.push_back({{"case", label}, {"normal_form", to_factored_string(s)}});
    emit({{"schema", kSchema}, {"command", "verify"}, {"type", to_string(mode)}, {"pattern", to_string(p)},
          {"verdict", to_string(r.verdict)}, {"defect", to_string(r.defect)},
          {"residue", to_string(r.reduction.witness)}, {"steps", r.reduction.steps},
          {"explored", r.reduction.explored}, {"note", r.note}, {"witnesses", spec}});
  } else {
    std::cout << to_string(p) << "\n" << to_string(r.verdict);
    if (!r.note.empty()) std::cout << " (" << r.note << ")";
    std::cout << "\n";
    if (!r.accepted() && !r.defect.is_zero()) {
      std::cout << "residue: " << to_factored_string(r.reduction.witness) << "\n";
      for (const auto& [label, s] : r.specializations) std::cout << "witness (" << label << "): " << to_factored_string(s) << "\n";
    }
  }
  return verdict_exit(r.verdict);
}

Json component_json(const ClassifiedComponent& c) {
  Json gens = Json::array();
  for (const auto& g : c.component.ideal_generators()) gens.push_back(to_string(g));
  Json zero = Json::array(), nonzero = Json::array(), free = Json::array(), point = Json::object();
  for (CVar v : c.component.zero_assumptions) zero.push_back(v.name());
  for (CVar v : c.component.nonzero_assumptions) nonzero.push_back(v.name());
  for (CVar v : c.component.free_variables()) free.push_back(v.name());
  for (const auto& [v, q] : c.point) point[v.name()] = to_string(q);
  return {{"ideal", gens}, {"nonzero", nonzero}, {"free", free}, {"point", point},
          {"representative", to_string(c.representative)}, {"audit", to_string(c.audit.verdict)},
          {"open_unresolved", c.open_unresolved}};
}

int cmd_classify(const RunConfig& c) {
  auto mode = parse_ansatz_mode(c.type);
  Ansatz a = build_ansatz(mode, c.degree, c.units, c.reversed);
  SolveBudget budget;
  if (c.budget) budget.max_components = c.budget;
  std::optional<UnitPolicy> pol;
  if (!c.unit_policy.empty()) pol = unit_policy(c, UnitPolicy::NonUnitOnly);
  Classification cls = classify(a, pol, budget);
  FamilyCatalog catalog = mode == AnsatzMode::DT ? FamilyCatalog::differential() : FamilyCatalog::rota_baxter();
  MatchReport m = match_catalog(cls, catalog, c.samples, c.seed);
  const ConstraintSystem& cs = cls.constraints;
  bool ok = m.ok() && cls.audited();
  if (json_out(c)) {
    Json terms = Json::array(), eqs = Json::array(), unres = Json::array(), comps = Json::array(), rej = Json::array();
    for (const auto& t : a.terms) terms.push_back({{"coeff", t.coeff.name()}, {"monomial", to_string(t.word)}});
    for (std::size_t i = 0; i < cs.equations.size(); ++i)
      eqs.push_back({{"equation", to_string(cs.equations[i])}, {"monomial", to_string(cs.provenance[i])}});
    for (std::size_t i = 0; i < cs.unresolved.size(); ++i)
      unres.push_back({{"equation", to_string(cs.unresolved[i])}, {"monomial", to_string(cs.unresolved_provenance[i])}});
    for (const auto& cc : cls.components) comps.push_back(component_json(cc));
    for (const auto& cc : cls.rejected) rej.push_back(component_json(cc));
    Json matches = Json::array(), cover = Json::array();
    for (const auto& cm : m.components) {
      Json un = Json::array();
      for (const auto& u : cm.unmatched) un.push_back(to_string(u));
      matches.push_back({{"component", cm.component}, {"samples", cm.samples}, {"matched", cm.matched},
                         {"families", cm.families}, {"unmatched", un}});
    }
    for (const auto& fc : m.families) {
      Json un = Json::array();
      for (const auto& u : fc.uncovered) un.push_back(to_string(u));
      cover.push_back({{"family", fc.family}, {"applicable", fc.applicable}, {"samples", fc.samples},
                       {"covered", fc.covered}, {"uncovered", un}});
    }
    emit({{"schema", kSchema}, {"command", "classify"}, {"type", to_string(mode)}, {"degree", c.degree},
          {"units", c.units}, {"reversed", c.reversed}, {"ansatz", terms},
          {"constraints", {{"strategy", to_string(cs.strategy)}, {"unit_policy", to_string(cs.unit_policy)},
                           {"steps", cs.steps}, {"equations", eqs}, {"unresolved", unres}}},
          {"components", comps}, {"rejected", rej}, {"matches", matches}, {"coverage", cover},
          {"mismatches", m.mismatches()}, {"ok", ok}});
  } else {
    std::cout << "ansatz (" << to_string(mode) << ", degree " << c.degree << ", " << a.terms.size() << " terms):";
    for (const auto& t : a.terms) std::cout << " " << t.coeff.name() << "*" << to_string(t.word);
    std::cout << "\nconstraints: " << cs.equations.size() << " equations, " << cs.unresolved.size()
              << " unresolved (strategy " << to_string(cs.strategy) << ", unit policy " << to_string(cs.unit_policy)
              << ", " << cs.steps << " steps)\n";
    if (c.show_constraints)
      for (std::size_t i = 0; i < cs.equations.size(); ++i)
        std::cout << "  " << to_string(cs.equations[i]) << "   <- " << to_string(cs.provenance[i]) << "\n";
    for (std::size_t i = 0; i < cs.unresolved.size(); ++i)
      std::cout << "  unresolved: " << to_string(cs.unresolved[i]) << "   <- " << to_string(cs.unresolved_provenance[i]) << "\n";
    std::cout << "components: " << cls.components.size() << "\n";
    for (std::size_t i = 0; i < cls.components.size(); ++i) {
      const auto& cc = cls.components[i];
      std::cout << "  #" << i << " " << to_string(cc.component) << "\n      representative: "
                << to_string(cc.representative) << "  [" << to_string(cc.audit.verdict) << "]\n";
    }
    if (!cls.rejected.empty()) {
      std::cout << "rejected by self-audit: " << cls.rejected.size() << "\n";
      for (const auto& cc : cls.rejected)
        std::cout << "  " << to_string(cc.component) << "\n      representative: " << to_string(cc.representative)
                  << "  [" << to_string(cc.audit.verdict) << ", " << cc.open_unresolved.size()
                  << " unresolved constraints open]\n";
    }
    std::cout << "catalog match (" << c.samples << " samples each):\n";
    for (const auto& cm : m.components) {
      std::cout << "  component #" << cm.component << ": " << cm.matched << "/" << cm.samples;
      for (const auto& f : cm.families) std::cout << " " << f;
      for (const auto& u : cm.unmatched) std::cout << "\n      unmatched: " << to_string(u);
      std::cout << "\n";
    }
    for (const auto& fc : m.families) {
      std::cout << "  family " << fc.family << ": ";
      if (!fc.applicable) std::cout << "no specialization in the ansatz span";
      else std::cout << fc.covered << "/" << fc.samples << " covered";
      for (const auto& u : fc.uncovered) std::cout << "\n      uncovered: " << to_string(u);
      std::cout << "\n";
    }
    std::cout << "mismatches: " << m.mismatches() << "\n";
  }
  return ok ? kOk : kRejected;
}

OpiPattern dt_pattern(const RunConfig& c) {
  if (c.dt.empty()) throw std::invalid_argument("--dt pattern required");
  return parse_pattern(c.dt, OpiPattern::Kind::DifferentialType, constraint_ideal(c));
}

int cmd_gsb(const RunConfig& c) {
  GeneratorSystem sys(dt_pattern(c));
  TruncationBound b = bound_from(c);
  SearchOptions so{false, c.budget ? c.budget : 256};
  GsbReport r = gsb_check_truncated(sys, b, order_config(c), so);
  if (json_out(c)) {
    Json fails = Json::array();
    for (const auto& f : r.failures)
      fails.push_back({{"kind", f.kind == CompositionRecord::Kind::Intersection ? "intersection" : "including"},
                       {"w", to_string(f.w)}, {"f", to_string(f.f)}, {"g", to_string(f.g)},
                       {"residue", to_string(f.residue)}});
    emit({{"schema", kSchema}, {"command", "gsb"}, {"pattern", to_string(sys.pattern)}, {"bound", bound_json(b)},
          {"leading_words", r.leading_words}, {"instances", r.instances}, {"intersection", r.intersection},
          {"including", r.including}, {"trivial", r.trivial}, {"nontrivial", r.nontrivial},
          {"inconclusive", r.inconclusive}, {"order_exceptions", r.order_exceptions}, {"gsb", r.gsb()},
          {"failures", fails}});
  } else {
    std::cout << to_string(sys.pattern) << "\nbound " << to_string(b) << "\n"
              << "leading words " << r.leading_words << ", instances " << r.instances << "\n"
              << "compositions: " << r.intersection << " intersection, " << r.including << " including\n"
              << "trivial " << r.trivial << ", nontrivial " << r.nontrivial << ", inconclusive " << r.inconclusive
              << "\norder exceptions " << r.order_exceptions << "\n"
              << (r.gsb() ? "Groebner-Shirshov at the bound" : "not Groebner-Shirshov at the bound") << "\n";
    for (const auto& f : r.failures)
      std::cout << "  " << (f.kind == CompositionRecord::Kind::Intersection ? "intersection" : "including") << " at "
                << to_string(f.w) << ": residue " << to_string(f.residue) << "\n";
  }
  if (r.nontrivial) return kRejected;
  return r.inconclusive ? kInconclusive : kOk;
}

int cmd_irr(const RunConfig& c) {
  GeneratorSystem sys(dt_pattern(c));
  TruncationBound b = bound_from(c);
  std::vector<Generator> gens;
  if (c.gens.empty()) gens = fresh_generators(b.max_generators);
  else gens = generator_set(c).generators();
  IrrReport r = irr_enumerate(sys, gens, b);
  if (json_out(c)) {
    Json words = Json::array(), delta = Json::array(), surplus = Json::array();
    for (const auto& w : r.words) words.push_back(to_string(w));
    for (const auto& w : r.delta_words) delta.push_back(to_delta_string(w));
    for (const auto& w : r.unit_surplus) surplus.push_back(to_string(w));
    emit({{"schema", kSchema}, {"command", "irr"}, {"pattern", to_string(sys.pattern)}, {"bound", bound_json(b)},
          {"count", r.words.size()}, {"words", words}, {"delta", delta}, {"unit_surplus", surplus}});
  } else {
    std::cout << "Irr(S) at bound " << to_string(b) << ": " << r.words.size() << " words ("
              << r.delta_words.size() << " over iterated generators, " << r.unit_surplus.size() << " with [1])\n";
    for (const auto& w : r.delta_words) std::cout << "  " << to_delta_string(w) << "\n";
    for (const auto& w : r.unit_surplus) std::cout << "  " << to_string(w) << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Operated algebras: rewriting, Groebner-Shirshov checks and OPI classification"};
  app.require_subcommand(1);
  RunConfig c;
  auto common = [&](CLI::App* s) {
    s->add_option("--gens", c.gens, "Comma-separated generators (default: any identifier)");
    s->add_option("--order", c.order, "Word order: skeleton, purelex or deglenlex");
    s->add_option("--strategy", c.strategy, "Redex strategy: lo or li");
    s->add_option("--step-cap", c.step_cap, "Rewrite step cap")->check(CLI::PositiveNumber);
    s->add_option("--unit-policy", c.unit_policy, "nonunit, onesided or allow (Pi only)");
    s->add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    s->add_option("--constraint", c.constraints, "Constraint on the pattern coefficients (repeatable)");
  };
  auto* nf = app.add_subcommand("nf", "Normal form of a polynomial");
  common(nf);
  nf->add_option("input", c.input, "Bracketed polynomial")->required();
  nf->add_option("--dt", c.dt, "Differential-type pattern N(x, y) or builtin name");
  nf->add_option("--rbt", c.rbt, "Rota-Baxter-type pattern M(x, y) or builtin name");
  nf->add_flag("--trace", c.trace, "Print the reduction steps");

  auto* verify = app.add_subcommand("verify", "Decide whether an OPI is of differential or Rota-Baxter type");
  common(verify);
  verify->add_option("pattern", c.input, "N(x, y) or M(x, y)")->required();
  verify->add_option("--type", c.type, "dt or rbt")->check(CLI::IsMember({"dt", "rbt"}));
  verify->add_option("--budget", c.budget, "Search budget in polynomial states");

  auto* cls = app.add_subcommand("classify", "Classify OPIs of a given ansatz");
  common(cls);
  cls->add_option("--type", c.type, "dt or rbt")->check(CLI::IsMember({"dt", "rbt"}));
  cls->add_option("--degree", c.degree, "Operator degree of the ansatz");
  cls->add_flag("--units", c.units, "Include terms with [1]");
  cls->add_flag("--reversed,!--no-reversed", c.reversed, "Include y-before-x terms (default on)");
  cls->add_option("--budget", c.budget, "Maximum number of solution components");
  cls->add_option("--samples", c.samples, "Sample points per component and family")->check(CLI::PositiveNumber);
  cls->add_option("--seed", c.seed, "Sampling seed");
  cls->add_flag("--show-constraints", c.show_constraints, "List every extracted equation");

  auto* gsb = app.add_subcommand("gsb", "Truncated Groebner-Shirshov check");
  common(gsb);
  gsb->add_option("--dt", c.dt, "Differential-type pattern")->required();
  gsb->add_option("--bound", c.bound, "B,D[,G[,deg]]: breadth, depth, generators, degree");
  gsb->add_option("--budget", c.budget, "Search budget per composition");

  auto* irr = app.add_subcommand("irr", "Enumerate Irr(S) within a bound");
  common(irr);
  irr->add_option("--dt", c.dt, "Differential-type pattern")->required();
  irr->add_option("--bound", c.bound, "B,D[,G[,deg]]: breadth, depth, generators, degree");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }
  try {
    if (*nf) return cmd_nf(c);
    if (*verify) return cmd_verify(c);
    if (*cls) return cmd_classify(c);
    if (*gsb) return cmd_gsb(c);
    if (*irr) return cmd_irr(c);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const ResourceLimit& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kResource;
  } catch (const ReductionBudgetExceeded& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kResource;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  }
  return kParse;
}
