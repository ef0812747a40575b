#include "opalg/pattern.hpp"

#include <set>

namespace opalg {

Generator pattern_x() {
  static const Generator g("x");
  return g;
}

Generator pattern_y() {
  static const Generator g("y");
  return g;
}

GeneratorSet pattern_generators() { return GeneratorSet({"x", "y"}); }

OpiPattern OpiPattern::differential(SymPoly n, std::vector<MPoly> ideal, std::string name) {
  return {Kind::DifferentialType, std::move(n), std::move(ideal), std::move(name)};
}

OpiPattern OpiPattern::rota_baxter(SymPoly m, std::vector<MPoly> ideal, std::string name) {
  return {Kind::RotaBaxterType, std::move(m), std::move(ideal), std::move(name)};
}

SymPoly OpiPattern::phi() const {
  Word x = Word::gen(pattern_x()), y = Word::gen(pattern_y());
  if (is_dt()) return SymPoly::word(Word::bracket(x * y)) - body;
  return SymPoly::word(Word::bracket(x) * Word::bracket(y)) - body.bracket();
}

SymPoly OpiPattern::body_at(const Word& u, const Word& v) const {
  return substitute_words(body, {{pattern_x(), u}, {pattern_y(), v}});
}

SymPoly OpiPattern::body_at(const SymPoly& u, const SymPoly& v) const {
  return evaluate<MPoly, MPoly>(body, {{pattern_x(), u}, {pattern_y(), v}});
}

std::vector<CVar> OpiPattern::parameters() const {
  std::set<CVar> vars;
  for (const auto& [w, c] : body.terms())
    for (CVar v : c.variables()) vars.insert(v);
  for (const auto& g : constraint_ideal)
    for (CVar v : g.variables()) vars.insert(v);
  return {vars.begin(), vars.end()};
}

SymPoly instantiate_opi(const OpiPattern& p, const Word& u, const Word& v) {
  return substitute_words(p.phi(), {{pattern_x(), u}, {pattern_y(), v}});
}

SymPoly instantiate_opi(const OpiPattern& p, const SymPoly& u, const SymPoly& v) {
  return evaluate<MPoly, MPoly>(p.phi(), {{pattern_x(), u}, {pattern_y(), v}});
}

template <Coefficient C>
bool is_totally_linear(const OpPoly<C>& p) {
  auto x = pattern_x().id(), y = pattern_y().id();
  for (const auto& [w, c] : p.terms()) {
    if (w.count(x) != 1 || w.count(y) != 1) return false;
    for (auto t : w.tokens())
      if (t >= 0 && t != x && t != y) return false;
  }
  return true;
}

template bool is_totally_linear(const OpPoly<Rational>&);
template bool is_totally_linear(const OpPoly<MPoly>&);

bool is_drf(const Word& w) {
  std::vector<std::size_t> breadth;  // atoms seen inside each open bracket
  for (auto x : w.tokens()) {
    if (x == Word::kClose) {
      if (breadth.back() >= 2) return false;
      breadth.pop_back();
      continue;
    }
    if (!breadth.empty()) ++breadth.back();
    if (x == Word::kOpen) breadth.push_back(0);
  }
  return true;
}

bool is_rbrf(const Word& w) {
  const auto& t = w.tokens();
  for (std::size_t i = 1; i < t.size(); ++i)
    if (t[i - 1] == Word::kClose && t[i] == Word::kOpen) return false;
  return true;
}

std::size_t operator_degree(const Word& w) { return w.count(Word::kOpen); }

namespace {

MPoly parameter(const std::string& text) {
  if (text.empty()) return MPoly::var("lambda");
  return parse_mpoly(text);
}

SymPoly body(const std::string& text) { return parse_poly(text, pattern_generators()); }

}  // namespace

std::optional<OpiPattern> builtin_pattern(const std::string& name) {
  std::string head = name, arg;
  if (auto colon = name.find(':'); colon != std::string::npos) {
    head = name.substr(0, colon);
    arg = name.substr(colon + 1);
  }
  if (head == "derivation") return OpiPattern::differential(body("[x] y + x [y]"), {}, name);
  if (head == "weight") {
    SymPoly n = body("[x] y + x [y]") + body("[x] [y]").scaled(parameter(arg));
    return OpiPattern::differential(n, {}, name);
  }
  if (head == "hom") return OpiPattern::differential(body("[x] [y]"), {}, name);
  if (head == "average") return OpiPattern::rota_baxter(body("x [y]"), {}, name);
  if (head == "inverse-average") return OpiPattern::rota_baxter(body("[x] y"), {}, name);
  if (head == "nijenhuis") return OpiPattern::rota_baxter(body("x [y] + [x] y - [x y]"), {}, name);
  if (head == "rota-baxter") {
    SymPoly m = body("x [y] + [x] y") + body("x y").scaled(parameter(arg));
    return OpiPattern::rota_baxter(m, {}, name);
  }
  if (head == "td") return OpiPattern::rota_baxter(body("x [y] + [x] y - x [1] y"), {}, name);
  return std::nullopt;
}

std::vector<std::string> builtin_pattern_names() {
  return {"derivation", "weight:<lambda>", "hom", "average", "inverse-average", "nijenhuis", "rota-baxter:<lambda>", "td"};
}

OpiPattern parse_pattern(const std::string& spec, OpiPattern::Kind kind,
                         const std::vector<MPoly>& constraint_ideal) {
  OpiPattern p;
  if (auto b = builtin_pattern(spec)) {
    if (b->kind != kind)
      throw std::invalid_argument("pattern '" + spec + "' is of the other type");
    p = *b;
  } else {
    p.kind = kind;
    p.body = body(spec);
    p.name = spec;
  }
  p.constraint_ideal.insert(p.constraint_ideal.end(), constraint_ideal.begin(), constraint_ideal.end());
  return p;
}

std::string to_string(const OpiPattern& p) {
  std::string s = p.is_dt() ? "[x y] = " : "[x] [y] = [";
  s += to_string(p.body);
  if (!p.is_dt()) s += "]";
  if (!p.constraint_ideal.empty()) {
    s += "  mod <";
    for (std::size_t i = 0; i < p.constraint_ideal.size(); ++i)
      s += (i ? ", " : "") + to_string(p.constraint_ideal[i]);
    s += ">";
  }
  return s;
}

}  // namespace opalg
