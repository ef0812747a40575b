#pragma once

#include <optional>
#include <string>
#include <vector>

#include "opalg/oppoly.hpp"

namespace opalg {

/// The two reserved pattern generators.
Generator pattern_x();
Generator pattern_y();
GeneratorSet pattern_generators();

/// An operated polynomial identity of differential type, [x y] - N(x,y), or of
/// Rota–Baxter type, [x][y] - [M(x,y)]. `body` is N or M.
struct OpiPattern {
  enum class Kind { DifferentialType, RotaBaxterType };

  Kind kind = Kind::DifferentialType;
  SymPoly body;
  /// Coefficients vanishing modulo this ideal count as zero.
  std::vector<MPoly> constraint_ideal;
  std::string name;

  static OpiPattern differential(SymPoly n, std::vector<MPoly> ideal = {}, std::string name = {});
  static OpiPattern rota_baxter(SymPoly m, std::vector<MPoly> ideal = {}, std::string name = {});

  bool is_dt() const { return kind == Kind::DifferentialType; }
  /// The OPI phi(x, y) itself.
  SymPoly phi() const;
  /// body with x -> u, y -> v.
  SymPoly body_at(const Word& u, const Word& v) const;
  SymPoly body_at(const SymPoly& u, const SymPoly& v) const;
  std::vector<CVar> parameters() const;
};

/// phi with x -> u, y -> v, expanded.
SymPoly instantiate_opi(const OpiPattern& p, const Word& u, const Word& v);
SymPoly instantiate_opi(const OpiPattern& p, const SymPoly& u, const SymPoly& v);

/// Every monomial contains x exactly once and y exactly once.
template <Coefficient C>
bool is_totally_linear(const OpPoly<C>& p);
/// No bracket contains a word of breadth >= 2.
bool is_drf(const Word& w);
/// No two adjacent bracket atoms at any nesting level.
bool is_rbrf(const Word& w);
template <Coefficient C>
bool is_drf(const OpPoly<C>& p) {
  for (const auto& [w, c] : p.terms())
    if (!is_drf(w)) return false;
  return true;
}
template <Coefficient C>
bool is_rbrf(const OpPoly<C>& p) {
  for (const auto& [w, c] : p.terms())
    if (!is_rbrf(w)) return false;
  return true;
}

/// Total operator degree of a word (number of brackets).
std::size_t operator_degree(const Word& w);

/// Built-in named patterns: derivation, weight:<λ>, hom (differential type);
/// average, inverse-average, nijenhuis, rota-baxter:<λ>, td (Rota–Baxter type).
std::optional<OpiPattern> builtin_pattern(const std::string& name);
std::vector<std::string> builtin_pattern_names();

/// Parses a named pattern or an explicit N / M over x, y.
OpiPattern parse_pattern(const std::string& spec, OpiPattern::Kind kind,
                         const std::vector<MPoly>& constraint_ideal = {});

std::string to_string(const OpiPattern& p);

}  // namespace opalg
