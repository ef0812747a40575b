#include "opalg/gsb.hpp"

#include <algorithm>
#include <random>
#include <thread>
#include <unordered_map>

namespace opalg {

std::string to_string(const TruncationBound& b) {
  return "breadth <= " + std::to_string(b.max_breadth) + ", depth <= " + std::to_string(b.max_depth) +
         ", degree <= " + std::to_string(b.max_degree) + ", " + std::to_string(b.max_generators) + " generators";
}

std::vector<Word> enumerate_words(const std::vector<Generator>& gens, const TruncationBound& bound) {
  const std::size_t B = bound.max_breadth, K = bound.max_degree;
  // words[k]: words of the current depth bound with degree k
  std::vector<std::vector<Word>> words(K + 1);
  words[0].push_back(Word::unit());
  for (std::size_t d = 0; d <= bound.max_depth; ++d) {
    std::vector<std::vector<Word>> atoms(K + 1);
    if (K >= 1)
      for (const Generator& g : gens) atoms[1].push_back(Word::gen(g));
    if (d > 0)
      for (std::size_t k = 0; k <= K; ++k)
        for (const Word& w : words[k]) atoms[k].push_back(Word::bracket(w));
    std::vector<std::vector<Word>> next(K + 1), layer(K + 1);
    layer[0].push_back(Word::unit());
    next[0].push_back(Word::unit());
    for (std::size_t len = 1; len <= B; ++len) {
      std::vector<std::vector<Word>> grown(K + 1);
      for (std::size_t k = 0; k <= K; ++k)
        for (const Word& prefix : layer[k])
          for (std::size_t m = 0; k + m <= K; ++m)
            for (const Word& a : atoms[m]) grown[k + m].push_back(prefix * a);
      for (std::size_t k = 0; k <= K; ++k) next[k].insert(next[k].end(), grown[k].begin(), grown[k].end());
      layer = std::move(grown);
    }
    words = std::move(next);
  }
  std::vector<Word> out;
  for (auto& bucket : words) out.insert(out.end(), bucket.begin(), bucket.end());
  std::sort(out.begin(), out.end(), [](const Word& a, const Word& b) {
    if (a.deg() != b.deg()) return a.deg() < b.deg();
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

std::vector<Generator> fresh_generators(std::size_t n) {
  static const char* names[] = {"u", "v", "w", "t", "s", "r", "q", "p"};
  if (n > std::size(names)) throw std::invalid_argument("at most 8 fresh generators");
  std::vector<Generator> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(names[i]);
  return out;
}

GeneratorSystem::GeneratorSystem(OpiPattern p) : pattern(std::move(p)) {
  if (!pattern.is_dt()) throw std::invalid_argument("Groebner-Shirshov checks need a differential-type pattern");
  schema = RuleSchema::from_pattern(pattern);
}

SymPoly GeneratorSystem::instance(const Word& u, const Word& v) const { return instantiate_opi(pattern, u, v); }

SymPoly make_monic(const SymPoly& p, const OrderConfig& ord) {
  auto [w, c] = p.leading(ord);
  if (!c.is_constant())
    throw AmbiguousLeadingCoefficient("leading coefficient " + to_string(c) + " of " + to_string(w) + " is symbolic");
  return p.scaled(MPoly(1 / c.constant_term()));
}

namespace {

Word product(const std::vector<Word>& atoms, std::size_t from, std::size_t to) {
  Word w;
  for (std::size_t i = from; i < to; ++i) w *= atoms[i];
  return w;
}

}  // namespace

std::vector<CompositionRecord> compositions(const SymPoly& f0, const SymPoly& g0, const OrderConfig& ord) {
  SymPoly f = make_monic(f0, ord), g = make_monic(g0, ord);
  Word lf = f.leading(ord).first, lg = g.leading(ord).first;
  auto af = lf.atoms(), ag = lg.atoms();
  std::vector<CompositionRecord> out;
  if (lf == lg && f != g) {
    CompositionRecord r;
    r.f = f, r.g = g, r.w = lf, r.value = f - g;
    out.push_back(std::move(r));
  }
  for (std::size_t k = 1; k < af.size() && k < ag.size(); ++k) {
    if (!std::equal(af.end() - static_cast<std::ptrdiff_t>(k), af.end(), ag.begin())) continue;
    CompositionRecord r;
    r.f = f, r.g = g;
    r.mu = product(ag, k, ag.size());
    r.nu = product(af, 0, af.size() - k);
    r.w = lf * r.mu;
    r.value = f * SymPoly::word(r.mu) - SymPoly::word(r.nu) * g;
    out.push_back(std::move(r));
  }
  if (lf != lg) {
    for (const StarWord& q : occurrences(lf, lg)) {
      CompositionRecord r;
      r.kind = CompositionRecord::Kind::Including;
      r.f = f, r.g = g, r.w = lf, r.q = q;
      r.value = f - poly_substitute(q, g);
      out.push_back(std::move(r));
    }
  }
  return out;
}

VerdictKind decide_triviality(CompositionRecord& comp, Rewriter& rw, const SearchOptions& search) {
  Verdict v = reduces_to_zero(comp.value, rw, search);
  comp.trivial = v.yes();
  comp.residue = v.witness;
  return v.kind;
}

namespace {

void check_leading_word(const Word& W, const GeneratorSystem& sys, Rewriter& rw, const OrderConfig& ord,
                        const SearchOptions& search, GsbReport& rep) {
  std::vector<Redex> top, inner;
  for (Redex& r : find_redexes(W, sys.schema)) (r.begin == 0 && r.end == W.size() ? top : inner).push_back(std::move(r));
  if (top.empty()) return;
  ++rep.leading_words;
  std::vector<SymPoly> inst;
  for (const Redex& r : top) {
    inst.push_back(sys.instance(r.a, r.b));
    ++rep.instances;
    SymPoly body = sys.pattern.body_at(r.a, r.b);
    if (std::any_of(body.terms().begin(), body.terms().end(),
                    [&](const auto& t) { return !word_less(t.first, W, ord); }))
      ++rep.order_exceptions;
  }
  auto settle = [&](CompositionRecord&& c) {
    VerdictKind k = decide_triviality(c, rw, search);
    if (k == VerdictKind::Yes) {
      ++rep.trivial;
    } else {
      ++(k == VerdictKind::No ? rep.nontrivial : rep.inconclusive);
      if (rep.failures.size() < 8) rep.failures.push_back(std::move(c));
    }
  };
  for (std::size_t i = 0; i < inst.size(); ++i)
    for (std::size_t j = i + 1; j < inst.size(); ++j) {
      CompositionRecord c;
      c.f = inst[i], c.g = inst[j], c.w = W, c.value = inst[i] - inst[j];
      ++rep.intersection;
      settle(std::move(c));
    }
  for (const SymPoly& f : inst)
    for (const Redex& r : inner) {
      CompositionRecord c;
      c.kind = CompositionRecord::Kind::Including;
      c.f = f, c.g = sys.instance(r.a, r.b), c.w = W, c.q = r.context;
      c.value = f - poly_substitute(r.context, c.g);
      ++rep.including;
      settle(std::move(c));
    }
}

}  // namespace

GsbReport gsb_check_truncated(const GeneratorSystem& sys, const TruncationBound& bound, const OrderConfig& ord,
                              const SearchOptions& search, std::size_t threads) {
  std::vector<Word> leading;
  for (Word& w : enumerate_words(fresh_generators(bound.max_generators), bound))
    if (w.is_bracket_atom() && w.inner().breadth() >= 2) leading.push_back(std::move(w));
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<std::size_t>(threads, std::max<std::size_t>(1, leading.size() / 64));
  std::vector<GsbReport> parts(threads);
  auto work = [&](std::size_t t) {
    Rewriter rw(sys.schema);
    std::size_t lo = leading.size() * t / threads, hi = leading.size() * (t + 1) / threads;
    for (std::size_t i = lo; i < hi; ++i) check_leading_word(leading[i], sys, rw, ord, search, parts[t]);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  GsbReport rep;
  rep.pattern = sys.pattern.name.empty() ? to_string(sys.pattern.body) : sys.pattern.name;
  rep.bound = bound;
  for (auto& p : parts) {
    rep.leading_words += p.leading_words;
    rep.instances += p.instances;
    rep.intersection += p.intersection;
    rep.including += p.including;
    rep.trivial += p.trivial;
    rep.nontrivial += p.nontrivial;
    rep.inconclusive += p.inconclusive;
    rep.order_exceptions += p.order_exceptions;
    for (auto& f : p.failures)
      if (rep.failures.size() < 8) rep.failures.push_back(std::move(f));
  }
  return rep;
}

namespace {

bool has_unit_bracket(const Word& w) {
  auto t = w.tokens();
  for (std::size_t i = 1; i < t.size(); ++i)
    if (t[i - 1] == Word::kOpen && t[i] == Word::kClose) return true;
  return false;
}

}  // namespace

IrrReport irr_enumerate(const GeneratorSystem& sys, const std::vector<Generator>& gens, const TruncationBound& bound) {
  IrrReport rep;
  for (Word& w : enumerate_words(gens, bound)) {
    if (!find_redexes(w, sys.schema).empty()) continue;
    (has_unit_bracket(w) ? rep.unit_surplus : rep.delta_words).push_back(w);
    rep.words.push_back(std::move(w));
  }
  return rep;
}

CdlReport cdl_direct_sum_check(const GeneratorSystem& sys, const TruncationBound& bound, std::size_t ideal_samples,
                               std::uint64_t seed) {
  CdlReport rep;
  auto gens = fresh_generators(bound.max_generators);
  auto irreducible = [](const Word& w) { return is_drf(w); };
  const auto words = enumerate_words(gens, bound);
  std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<std::size_t>(threads, std::max<std::size_t>(1, words.size() / 256));
  std::vector<CdlReport> parts(threads);
  auto work = [&](std::size_t t) {
    Rewriter rw(sys.schema);
    CdlReport& part = parts[t];
    for (std::size_t i = words.size() * t / threads; i < words.size() * (t + 1) / threads; ++i) {
      const Word& w = words[i];
      ++part.words;
      auto nf = rw.normal_form(w);
      bool in_span = nf.ok() && std::all_of(nf.value.terms().begin(), nf.value.terms().end(),
                                            [&](const auto& term) { return irreducible(term.first); });
      if (!in_span) ++part.not_in_irr_span;
      if (irreducible(w)) {
        ++part.irr_words;
        if (nf.value != SymPoly::word(w)) ++part.irr_moved;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }
  for (const CdlReport& part : parts) {
    rep.words += part.words;
    rep.not_in_irr_span += part.not_in_irr_span;
    rep.irr_words += part.irr_words;
    rep.irr_moved += part.irr_moved;
  }
  Rewriter rw(sys.schema);
  std::mt19937_64 rng(seed);
  WordSampler sampler{gens, bound.max_breadth, bound.max_depth};
  std::uniform_int_distribution<int> terms(1, 3), coeff(-5, 5);
  for (std::size_t i = 0; i < ideal_samples; ++i) {
    SymPoly element;
    for (int k = terms(rng); k > 0; --k) {
      SymPoly inst = sys.instance(sampler.nonunit(rng), sampler.nonunit(rng));
      element += poly_substitute(sampler.context(rng), inst).scaled(MPoly(coeff(rng)));
    }
    ++rep.ideal_samples;
    auto nf = rw.normal_form(element);
    if (!nf.ok() || !nf.value.is_zero()) ++rep.ideal_nonzero;
  }
  return rep;
}

std::string to_string(TypeVerdict v) {
  switch (v) {
    case TypeVerdict::Accepted: return "accepted";
    case TypeVerdict::NotTotallyLinear: return "NotTotallyLinear";
    case TypeVerdict::NotDRF: return "NotDRF";
    case TypeVerdict::NotRBRF: return "NotRBRF";
    case TypeVerdict::NotReducible: return "rejected";
    case TypeVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

struct Fresh {
  Word u, v, w;
  Fresh() {
    auto g = fresh_generators(3);
    u = Word::gen(g[0]), v = Word::gen(g[1]), w = Word::gen(g[2]);
  }
};

TypeVerdict from_reduction(VerdictKind k) {
  switch (k) {
    case VerdictKind::Yes: return TypeVerdict::Accepted;
    case VerdictKind::No: return TypeVerdict::NotReducible;
    case VerdictKind::Inconclusive: return TypeVerdict::Inconclusive;
  }
  return TypeVerdict::Inconclusive;
}

void add_specializations(TypeReport& rep, Rewriter& rw) {
  auto g = fresh_generators(3);
  const std::pair<std::string, std::pair<Generator, Generator>> cases[] = {
      {"w = u", {g[2], g[0]}}, {"v = u", {g[1], g[0]}}, {"w = v", {g[2], g[1]}}};
  for (const auto& [label, sub] : cases) {
    SymPoly s = substitute_words(rep.reduction.witness, {{sub.first, Word::gen(sub.second)}});
    auto nf = rw.normal_form(s);
    if (!nf.value.is_zero()) rep.specializations.emplace_back(label, nf.value);
  }
}

}  // namespace

SymPoly associativity_defect(const OpiPattern& p) {
  Fresh f;
  if (p.is_dt()) return p.body_at(f.u * f.v, f.w) - p.body_at(f.u, f.v * f.w);
  SymPoly u = SymPoly::word(f.u), v = SymPoly::word(f.v), w = SymPoly::word(f.w);
  return p.body_at(p.body_at(u, v), w) - p.body_at(u, p.body_at(v, w));
}

TypeReport dt_check(const SymPoly& n, const std::vector<MPoly>& ideal, const TypeCheckOptions& opts) {
  TypeReport rep;
  if (!is_totally_linear(n)) {
    rep.verdict = TypeVerdict::NotTotallyLinear;
    return rep;
  }
  if (!is_drf(n)) {
    rep.verdict = TypeVerdict::NotDRF;
    return rep;
  }
  rep.defect = associativity_defect(OpiPattern::differential(n, ideal));
  ReductionOptions ro;
  ro.step_cap = opts.step_cap;
  Rewriter rw(RuleSchema::sigma(n, ideal), ro);
  rep.reduction = reduces_to_zero(rep.defect, rw, {false, opts.tree_budget});
  rep.verdict = from_reduction(rep.reduction.kind);
  if (!rep.accepted()) add_specializations(rep, rw);
  return rep;
}

TypeReport rbt_check(const SymPoly& m, const std::vector<MPoly>& ideal, const TypeCheckOptions& opts) {
  TypeReport rep;
  if (!is_totally_linear(m)) {
    rep.verdict = TypeVerdict::NotTotallyLinear;
    return rep;
  }
  if (!is_rbrf(m)) {
    rep.verdict = TypeVerdict::NotRBRF;
    return rep;
  }
  rep.defect = associativity_defect(OpiPattern::rota_baxter(m, ideal));
  ReductionOptions ro;
  ro.step_cap = opts.step_cap;
  Rewriter rw(RuleSchema::pi(m, ideal), ro);
  rep.reduction = reduces_to_zero(rep.defect, rw, {false, opts.tree_budget});
  rep.verdict = from_reduction(rep.reduction.kind);
  if (!rep.accepted() && opts.unit_fallback) {
    Rewriter units(RuleSchema::pi(m, ideal, UnitPolicy::AllowUnits), ro);
    Verdict second = reduces_to_zero(rep.defect, units, {false, opts.tree_budget});
    if (second.yes()) {
      rep.verdict = TypeVerdict::Accepted;
      rep.note = "reaches zero only with unit rewrites";
      rep.reduction = second;
    }
  }
  if (!rep.accepted()) add_specializations(rep, rw);
  return rep;
}

TypeReport type_check(const OpiPattern& p, const TypeCheckOptions& opts) {
  return p.is_dt() ? dt_check(p.body, p.constraint_ideal, opts) : rbt_check(p.body, p.constraint_ideal, opts);
}

namespace {

class FreeOperator {
 public:
  explicit FreeOperator(const SymPoly& n) : n_(n) {}

  SymPoly apply(const SymPoly& p) {
    SymPoly out;
    for (const auto& [w, c] : p.terms()) out += apply(w).scaled(c);
    return out;
  }

  SymPoly apply(const Word& w) {
    if (auto it = memo_.find(w); it != memo_.end()) return it->second;
    auto atoms = w.atoms();
    SymPoly out;
    if (atoms.size() <= 1) {
      out = SymPoly::word(Word::bracket(w));
    } else {
      Word first = atoms[0], rest = product(atoms, 1, atoms.size());
      for (const auto& [t, c] : n_.terms()) out += interpret(t, first, rest).scaled(c);
    }
    return memo_.emplace(w, out).first->second;
  }

 private:
  SymPoly interpret(const Word& t, const Word& first, const Word& rest) {
    SymPoly out = SymPoly::one();
    for (const Word& a : t.atoms()) {
      if (a.is_bracket_atom()) out *= apply(interpret(a.inner(), first, rest));
      else if (a.tokens()[0] == pattern_x().id()) out *= SymPoly::word(first);
      else out *= SymPoly::word(rest);
    }
    return out;
  }

  const SymPoly& n_;
  std::unordered_map<Word, SymPoly> memo_;
};

}  // namespace

SymPoly free_dt_operator_nf(const Word& u, const OpiPattern& p) {
  FreeOperator d(p.body);
  SymPoly out = d.apply(u);
  if (p.constraint_ideal.empty()) return out;
  auto gb = buchberger(p.constraint_ideal);
  return out.map_coeffs([&](const MPoly& c) { return nf_mod_ideal(c, gb); });
}

std::string to_delta_string(const Word& w) {
  if (w.is_unit()) return "1";
  std::string out;
  for (const Word& a : w.atoms()) {
    if (!out.empty()) out += " ";
    std::size_t n = 0;
    Word core = a;
    while (core.is_bracket_atom()) {
      core = core.inner();
      ++n;
    }
    if (core.is_generator()) {
      out += to_string(core) + (n ? "^(" + std::to_string(n) + ")" : "");
    } else {
      out += "[" + to_delta_string(a.inner()) + "]";
    }
  }
  return out;
}

std::string to_delta_string(const SymPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const Word& w : p.support()) {
    const MPoly& c = p.terms().at(w);
    bool neg = c.is_constant() && c.constant_term() < 0;
    MPoly mag = neg ? -c : c;
    out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    if (mag != MPoly(1)) out += mag.is_constant() ? to_string(mag) + " " : "(" + to_string(mag) + ")*";
    out += to_delta_string(w);
  }
  return out;
}

std::string to_factored_string(const SymPoly& p) {
  if (p.size() < 2) return to_string(p);
  std::vector<std::vector<Word>> atoms;
  for (const auto& [w, c] : p.terms()) atoms.push_back(w.atoms());
  std::size_t shortest = std::min_element(atoms.begin(), atoms.end(), [](const auto& a, const auto& b) {
                           return a.size() < b.size();
                         })->size();
  auto agree = [&](auto at) {
    return std::all_of(atoms.begin(), atoms.end(), [&](const auto& a) { return at(a) == at(atoms[0]); });
  };
  std::size_t left = 0, right = 0;
  while (left < shortest && agree([&](const auto& a) { return a[left]; })) ++left;
  while (left + right < shortest && agree([&](const auto& a) { return a[a.size() - 1 - right]; })) ++right;
  if (left == 0 && right == 0) return to_string(p);
  // Positive terms first so the factor reads (u v - v u) rather than (-v u + u v).
  std::vector<std::string> pos, neg;
  std::size_t i = 0;
  for (const auto& [w, c] : p.terms()) {
    const auto& a = atoms[i++];
    SymPoly t;
    t.add_term(product(a, left, a.size() - right), c);
    std::string s = to_string(t);
    (s.starts_with("-") ? neg : pos).push_back(s);
  }
  std::string middle;
  for (const auto& s : pos) middle += middle.empty() ? s : " + " + s;
  for (const auto& s : neg) middle += middle.empty() ? s : " - " + s.substr(s.starts_with("- ") ? 2 : 1);
  std::string out;
  if (left) out += to_string(product(atoms[0], 0, left)) + " ";
  out += "(" + middle + ")";
  if (right) out += " " + to_string(product(atoms[0], atoms[0].size() - right, atoms[0].size()));
  return out;
}

}  // namespace opalg
