#include "opalg/rewrite.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace opalg {

std::optional<Strategy> parse_strategy(const std::string& s) {
  if (s == "lo" || s == "leftmost-outermost") return Strategy::LeftmostOutermost;
  if (s == "li" || s == "leftmost-innermost") return Strategy::LeftmostInnermost;
  return std::nullopt;
}

std::optional<UnitPolicy> parse_unit_policy(const std::string& s) {
  if (s == "nonunit") return UnitPolicy::NonUnitOnly;
  if (s == "allow") return UnitPolicy::AllowUnits;
  if (s == "onesided") return UnitPolicy::OneSided;
  return std::nullopt;
}

std::string to_string(Strategy s) { return s == Strategy::LeftmostOutermost ? "lo" : "li"; }
std::string to_string(UnitPolicy p) {
  switch (p) {
    case UnitPolicy::NonUnitOnly: return "nonunit";
    case UnitPolicy::OneSided: return "onesided";
    case UnitPolicy::AllowUnits: return "allow";
  }
  return "?";
}

std::string to_string(SchemaViolation::Kind k) {
  switch (k) {
    case SchemaViolation::Kind::NotTotallyLinear: return "NotTotallyLinear";
    case SchemaViolation::Kind::NotDRF: return "NotDRF";
    case SchemaViolation::Kind::NotRBRF: return "NotRBRF";
    case SchemaViolation::Kind::UnsupportedPolicy: return "UnsupportedPolicy";
  }
  return "?";
}

RuleSchema RuleSchema::sigma(SymPoly n, std::vector<MPoly> ideal) {
  if (!is_totally_linear(n))
    throw SchemaViolation(SchemaViolation::Kind::NotTotallyLinear, "N is not totally linear in x and y");
  if (!is_drf(n)) throw SchemaViolation(SchemaViolation::Kind::NotDRF, "N is not in differentially reduced form");
  return {Kind::Sigma, std::move(n), UnitPolicy::NonUnitOnly, std::move(ideal)};
}

RuleSchema RuleSchema::pi(SymPoly m, std::vector<MPoly> ideal, UnitPolicy policy) {
  if (!is_totally_linear(m))
    throw SchemaViolation(SchemaViolation::Kind::NotTotallyLinear, "M is not totally linear in x and y");
  if (!is_rbrf(m)) throw SchemaViolation(SchemaViolation::Kind::NotRBRF, "M is not in Rota-Baxter reduced form");
  return {Kind::Pi, std::move(m), policy, std::move(ideal)};
}

RuleSchema RuleSchema::from_pattern(const OpiPattern& p, UnitPolicy policy) {
  if (p.is_dt()) {
    if (policy != UnitPolicy::NonUnitOnly)
      throw SchemaViolation(SchemaViolation::Kind::UnsupportedPolicy, "unit rewrites are only available for Pi");
    return sigma(p.body, p.constraint_ideal);
  }
  return pi(p.body, p.constraint_ideal, policy);
}

namespace {

using Tokens = std::span<const Word::Token>;

std::vector<std::size_t> matching(Tokens t) {
  std::vector<std::size_t> match(t.size(), 0), stack;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] == Word::kOpen) {
      stack.push_back(i);
    } else if (t[i] == Word::kClose) {
      match[stack.back()] = i;
      match[i] = stack.back();
      stack.pop_back();
    }
  }
  return match;
}

Word slice(Tokens t, std::size_t from, std::size_t to) {
  return Word::from_tokens(std::vector<Word::Token>(t.begin() + static_cast<std::ptrdiff_t>(from),
                                                    t.begin() + static_cast<std::ptrdiff_t>(to)));
}

StarWord context_around(Tokens t, std::size_t from, std::size_t to) {
  std::vector<Word::Token> c(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(from));
  c.push_back(Word::kStar);
  c.insert(c.end(), t.begin() + static_cast<std::ptrdiff_t>(to), t.end());
  return StarWord(Word::from_tokens(std::move(c)));
}

}  // namespace

std::vector<Redex> find_redexes(const Word& w, const RuleSchema& schema) {
  std::vector<Redex> out;
  if (schema.kind == RuleSchema::Kind::Empty) return out;
  Tokens t = w.tokens();
  auto match = matching(t);
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] != Word::kOpen) continue;
    std::size_t j = match[i];
    if (schema.kind == RuleSchema::Kind::Sigma) {
      std::vector<std::size_t> starts;
      for (std::size_t p = i + 1; p < j; p = (t[p] == Word::kOpen ? match[p] : p) + 1) starts.push_back(p);
      for (std::size_t s = 1; s < starts.size(); ++s)
        out.push_back({context_around(t, i, j + 1), slice(t, i + 1, starts[s]), slice(t, starts[s], j), i, j + 1});
    } else if (j + 1 < t.size() && t[j + 1] == Word::kOpen) {
      std::size_t k = match[j + 1];
      bool left = j == i + 1, right = k == j + 2;
      if ((left || right) && schema.unit_policy == UnitPolicy::NonUnitOnly) continue;
      if (left && right && schema.unit_policy == UnitPolicy::OneSided) continue;
      out.push_back({context_around(t, i, k + 1), slice(t, i + 1, j), slice(t, j + 2, k), i, k + 1});
    }
  }
  return out;
}

SymPoly fire(const Word&, const Redex& r, const RuleSchema& schema) {
  SymPoly body = substitute_words(schema.body, {{pattern_x(), r.a}, {pattern_y(), r.b}});
  if (schema.kind == RuleSchema::Kind::Pi) body = body.bracket();
  return poly_substitute(r.context, body);
}

std::vector<std::size_t> redex_measure(const Word& w) {
  Tokens t = w.tokens();
  auto match = matching(t);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] != Word::kOpen) continue;
    std::size_t deg = 0;
    for (std::size_t p = i + 1; p < match[i]; ++p) deg += t[p] >= 0;
    out.push_back(deg);
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

bool measure_less(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Rewriter::Rewriter(RuleSchema schema, ReductionOptions opts) : schema_(std::move(schema)), opts_(std::move(opts)) {
  if (!schema_.constraint_ideal.empty()) ideal_ = buchberger(schema_.constraint_ideal);
}

MPoly Rewriter::reduce_coefficient(const MPoly& c) const { return ideal_ ? nf_mod_ideal(c, *ideal_) : c; }

SymPoly Rewriter::reduce_coefficients(const SymPoly& p) const {
  if (!ideal_) return p;
  return p.map_coeffs([this](const MPoly& c) { return reduce_coefficient(c); });
}

std::optional<Redex> Rewriter::select(const Word& w) const {
  auto rs = find_redexes(w, schema_);
  if (rs.empty()) return std::nullopt;
  if (opts_.strategy == Strategy::LeftmostOutermost) return rs.front();
  for (const Redex& r : rs) {
    bool innermost = std::none_of(rs.begin(), rs.end(), [&](const Redex& o) {
      return r.begin <= o.begin && o.end <= r.end && (o.end - o.begin) < (r.end - r.begin);
    });
    if (innermost) return r;
  }
  return rs.front();
}

const SymPoly& Rewriter::nf_word(const Word& w, std::size_t& steps, std::size_t depth) {
  if (auto it = memo_.find(w); it != memo_.end()) return it->second;
  auto r = select(w);
  if (!r) return memo_.emplace(w, SymPoly::word(w)).first->second;
  constexpr std::size_t kMaxDepth = 4000;
  if (++steps > opts_.step_cap) throw CapHit{true};
  if (depth > kMaxDepth || active_.contains(w)) throw CapHit{false};
  active_.insert(w);
  SymPoly out;
  SymPoly image = fire(w, *r, schema_);
  for (const auto& [v, c] : image.terms()) out.add_scaled(nf_product(v, steps, depth + 1), c);
  active_.erase(w);
  return memo_.emplace(w, reduce_coefficients(out)).first->second;
}

SymPoly Rewriter::nf_product(const Word& w, std::size_t& steps, std::size_t depth) {
  // Sigma redexes never span two top-level atoms, and both strategies finish
  // the leftmost atom before touching the next.
  if (schema_.kind != RuleSchema::Kind::Sigma || w.breadth() < 2) return nf_word(w, steps, depth);
  SymPoly out = SymPoly::word(Word::unit());
  for (const Word& a : w.atoms()) {
    out = out * nf_word(a, steps, depth);
    if (out.is_zero()) break;
  }
  return ideal_ ? reduce_coefficients(out) : std::move(out);
}

NormalFormResult Rewriter::normal_form(const SymPoly& p) {
  if (opts_.trace || opts_.check_order || opts_.check_measure) return traced(p, opts_.step_cap);
  std::size_t steps = 0;
  if (memo_.size() > opts_.memo_limit) memo_.clear();
  try {
    SymPoly out;
    for (const auto& [w, c] : p.terms()) out.add_scaled(nf_product(w, steps, 0), c);
    NormalFormResult r{ideal_ ? reduce_coefficients(out) : std::move(out), {}};
    r.trace.step_count = steps;
    return r;
  } catch (const CapHit& hit) {
    active_.clear();
    if (!hit.steps_exhausted) return traced(p, opts_.step_cap - std::min(steps, opts_.step_cap));
    NormalFormResult r{reduce_coefficients(p), {}};
    r.trace.status = ReductionStatus::StepCapExceeded;
    r.trace.step_count = opts_.step_cap;
    return r;
  }
}

NormalFormResult Rewriter::traced(const SymPoly& p, std::size_t cap) {
  NormalFormResult res{reduce_coefficients(p), {}};
  OrderConfig ord = opts_.check_order.value_or(OrderConfig{});
  auto& tr = res.trace;
  while (true) {
    std::optional<Redex> r;
    Word w;
    for (const Word& cand : res.value.support(ord)) {
      if ((r = select(cand))) {
        w = cand;
        break;
      }
    }
    if (!r) return res;
    if (tr.step_count >= cap) {
      tr.status = ReductionStatus::StepCapExceeded;
      return res;
    }
    ++tr.step_count;
    MPoly c = res.value.terms().at(w);
    SymPoly image = fire(w, *r, schema_);
    std::string label = "step " + std::to_string(tr.step_count) + ": " + to_string(w);
    for (const auto& [v, k] : image.terms()) {
      if (opts_.check_order && !word_less(v, w, ord))
        tr.order_violations.push_back(label + " -> " + to_string(v) + " is not smaller");
      if (opts_.check_measure && !measure_less(redex_measure(v), redex_measure(w)))
        tr.measure_violations.push_back(label + " -> " + to_string(v) + " does not lower the measure");
    }
    SymPoly next = reduce_coefficients(res.value - SymPoly::word(w, c) + image.scaled(c));
    if (opts_.trace) tr.steps.push_back({w, *r, schema_.kind, res.value, next});
    res.value = std::move(next);
  }
}

std::string render_trace(const ReductionTrace& t) {
  std::string out;
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const auto& s = t.steps[i];
    out += std::to_string(i + 1) + ". " + to_string(s.word) + "  at " + to_string(s.redex.context.word()) +
           "  (a, b) = (" + to_string(s.redex.a) + ", " + to_string(s.redex.b) + ")\n   " + to_string(s.before) +
           "\n   -> " + to_string(s.after) + "\n";
  }
  out += t.status == ReductionStatus::NormalForm ? "normal form" : "step cap exceeded";
  out += " after " + std::to_string(t.step_count) + " steps\n";
  return out;
}

std::string to_string(VerdictKind v) {
  switch (v) {
    case VerdictKind::Yes: return "yes";
    case VerdictKind::No: return "no";
    case VerdictKind::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

using State = SymPoly::Terms;

struct Search {
  Rewriter& rw;
  std::size_t budget;
  std::set<State> seen;
  std::deque<SymPoly> queue;
  bool exhausted = false;

  Search(Rewriter& r, std::size_t b) : rw(r), budget(b) {}

  void push(const SymPoly& p) {
    if (seen.size() >= budget) return;
    if (seen.insert(p.terms()).second) queue.push_back(p);
  }

  // Expands one state; returns false when nothing is left.
  template <class Found>
  bool step(Found&& found) {
    if (queue.empty()) {
      exhausted = seen.size() < budget;
      return false;
    }
    SymPoly s = std::move(queue.front());
    queue.pop_front();
    for (const auto& [w, c] : s.terms()) {
      for (const Redex& r : find_redexes(w, rw.schema())) {
        SymPoly t = rw.reduce_coefficients(s - SymPoly::word(w, c) + fire(w, r, rw.schema()).scaled(c));
        if (found(t)) return false;
        push(t);
      }
    }
    return true;
  }
};

}  // namespace

Verdict reduces_to_zero(const SymPoly& p, Rewriter& rw, const SearchOptions& so) {
  Verdict v;
  auto nf = rw.normal_form(p);
  v.steps = nf.trace.step_count;
  v.witness = nf.value;
  if (nf.ok() && nf.value.is_zero()) {
    v.kind = VerdictKind::Yes;
    return v;
  }
  if (nf.ok() && so.certified_confluent) {
    v.kind = VerdictKind::No;
    v.note = "nonzero normal form of a confluent system";
    return v;
  }
  SymPoly start = rw.reduce_coefficients(p);
  if (start.is_zero()) {
    v.kind = VerdictKind::Yes;
    return v;
  }
  Search s(rw, so.tree_budget);
  s.push(start);
  bool hit = false;
  while (s.step([&](const SymPoly& t) { return hit = t.is_zero(); })) {
  }
  v.explored = s.seen.size();
  if (hit) {
    v.kind = VerdictKind::Yes;
    v.witness = SymPoly();
    v.note = "found by search";
  } else if (s.exhausted) {
    v.kind = VerdictKind::No;
    v.note = "every reduction path explored";
  } else {
    v.kind = VerdictKind::Inconclusive;
    v.note = nf.ok() ? "search budget exhausted" : "step cap exceeded and search budget exhausted";
  }
  return v;
}

Verdict joinable(const SymPoly& f, const SymPoly& g, Rewriter& rw, const SearchOptions& so) {
  Verdict v;
  auto nf = rw.normal_form(f), ng = rw.normal_form(g);
  v.steps = nf.trace.step_count + ng.trace.step_count;
  if (nf.ok() && ng.ok() && nf.value == ng.value) {
    v.kind = VerdictKind::Yes;
    v.witness = nf.value;
    v.note = "common normal form";
    return v;
  }
  v.witness = nf.value - ng.value;
  if (so.certified_confluent && nf.ok() && ng.ok()) {
    v.kind = VerdictKind::No;
    v.note = "distinct normal forms of a confluent system";
    return v;
  }
  // f - g ->* 0 implies f and g are joinable.
  Verdict d = reduces_to_zero(f - g, rw, so);
  v.explored = d.explored;
  if (d.yes()) {
    v.kind = VerdictKind::Yes;
    v.note = "difference reduces to zero";
    return v;
  }
  Search a(rw, so.tree_budget / 2 + 1), b(rw, so.tree_budget / 2 + 1);
  a.push(rw.reduce_coefficients(f));
  b.push(rw.reduce_coefficients(g));
  bool met = false;
  auto in_b = [&](const SymPoly& t) { return met = b.seen.contains(t.terms()); };
  auto in_a = [&](const SymPoly& t) { return met = a.seen.contains(t.terms()); };
  met = a.seen == b.seen;
  bool more_a = true, more_b = true;
  while (!met && (more_a || more_b)) {
    if (more_a) more_a = a.step(in_b);
    if (!met && more_b) more_b = b.step(in_a);
  }
  v.explored += a.seen.size() + b.seen.size();
  if (met) {
    v.kind = VerdictKind::Yes;
    v.note = "common reduct found by search";
  } else if (a.exhausted && b.exhausted) {
    v.kind = VerdictKind::No;
    v.note = "reduct sets explored and disjoint";
  } else {
    v.kind = VerdictKind::Inconclusive;
    v.note = "search budget exhausted";
  }
  return v;
}

bool ConfluenceReport::inconclusive() const {
  return !failures.empty() && std::none_of(failures.begin(), failures.end(),
                                            [](const Peak& p) { return p.verdict.kind == VerdictKind::No; });
}

namespace {

using Shape = std::vector<Word::Token>;

struct ShapeTable {
  ConfluenceBound b;
  // words[d][n]: leaf token 0, words of depth <= d with exactly n leaves and breadth in [1, max_breadth]
  std::vector<std::vector<std::vector<Shape>>> words;

  explicit ShapeTable(const ConfluenceBound& bound) : b(bound) {
    words.resize(b.max_depth + 1);
    for (std::size_t d = 0; d <= b.max_depth; ++d) {
      auto atoms = atoms_of(d);
      words[d].resize(b.max_leaves + 1);
      // sequences of 1..max_breadth atoms
      std::vector<std::vector<std::vector<Shape>>> seq(b.max_breadth + 1, std::vector<std::vector<Shape>>(b.max_leaves + 1));
      seq[0][0].push_back({});
      for (std::size_t k = 1; k <= b.max_breadth; ++k)
        for (std::size_t n = 0; n <= b.max_leaves; ++n)
          for (const Shape& prefix : seq[k - 1][n])
            for (std::size_t m = 1; n + m <= b.max_leaves; ++m)
              for (const Shape& a : atoms[m]) {
                Shape s = prefix;
                s.insert(s.end(), a.begin(), a.end());
                seq[k][n + m].push_back(std::move(s));
              }
      for (std::size_t k = 1; k <= b.max_breadth; ++k)
        for (std::size_t n = 1; n <= b.max_leaves; ++n)
          for (auto& s : seq[k][n]) words[d][n].push_back(s);
    }
  }

  std::vector<std::vector<Shape>> atoms_of(std::size_t d) const {
    std::vector<std::vector<Shape>> atoms(b.max_leaves + 1);
    atoms[1].push_back({0});
    if (d == 0) return atoms;
    for (std::size_t n = 1; n <= b.max_leaves; ++n)
      for (const Shape& inner : words[d - 1][n]) {
        Shape s{Word::kOpen};
        s.insert(s.end(), inner.begin(), inner.end());
        s.push_back(Word::kClose);
        atoms[n].push_back(std::move(s));
      }
    return atoms;
  }
};

}  // namespace

std::vector<Word> linear_shapes(const ConfluenceBound& bound) {
  static const char* names[] = {"u", "v", "w", "t", "s", "r", "q", "p", "o", "n", "m", "l"};
  if (bound.max_leaves > std::size(names)) throw std::invalid_argument("too many leaves");
  std::vector<Generator> leaves;
  for (std::size_t i = 0; i < bound.max_leaves; ++i) leaves.emplace_back(names[i]);
  ShapeTable table(bound);
  std::vector<Word> out;
  for (std::size_t n = 1; n <= bound.max_leaves; ++n)
    for (const Shape& s : table.words[bound.max_depth][n]) {
      Shape t = s;
      std::size_t next = 0;
      for (auto& tok : t)
        if (tok == 0) tok = leaves[next++].id();
      out.push_back(Word::from_tokens(std::move(t)));
    }
  std::stable_sort(out.begin(), out.end(), [](const Word& a, const Word& b) { return a.size() < b.size(); });
  return out;
}

ConfluenceReport local_confluence_check(Rewriter& rw, const ConfluenceBound& bound, const SearchOptions& so) {
  ConfluenceReport rep;
  rep.bound = bound;
  if (rw.schema().kind == RuleSchema::Kind::Empty) return rep;
  for (const Word& w : linear_shapes(bound)) {
    auto rs = find_redexes(w, rw.schema());
    if (rs.size() < 2) continue;
    ++rep.words;
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = i + 1; j < rs.size(); ++j) {
        ++rep.peaks;
        SymPoly l = fire(w, rs[i], rw.schema()), r = fire(w, rs[j], rw.schema());
        Verdict v = joinable(l, r, rw, so);
        if (v.yes()) continue;
        bool decisive = v.kind == VerdictKind::No;
        rep.failures.push_back({w, rs[i], rs[j], std::move(l), std::move(r), std::move(v)});
        if (decisive && bound.stop_at_counterexample) return rep;
      }
  }
  return rep;
}

}  // namespace opalg
