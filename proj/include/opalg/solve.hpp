#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "opalg/mpoly.hpp"

namespace opalg {

using Assignment = std::map<CVar, Rational>;

/// One branch of the case split: the points where `equations` vanish, every
/// zero-assumed variable is 0 and every nonzero-assumed variable is not.
struct SolutionComponent {
  std::vector<CVar> variables;  // all variables of the solved system
  std::vector<CVar> zero_assumptions;
  std::vector<CVar> nonzero_assumptions;
  /// v = f with f free of every solved variable, in elimination order.
  std::vector<std::pair<CVar, MPoly>> solved;
  /// Reduced lex basis of what remains after substitution.
  std::vector<MPoly> residual;
  Assignment representative;
  /// The residual ideal is not linear and could not be split further.
  bool opaque = false;

  /// All generators: zeros, solved equations and residual.
  std::vector<MPoly> ideal_generators() const;
  /// Variables neither zero nor solved nor constrained by the residual.
  std::vector<CVar> free_variables() const;
  bool contains(const Assignment& pt) const;
  /// A random point of the component, or nothing after `tries` failures.
  std::optional<Assignment> sample(std::mt19937_64& rng, int tries = 200) const;
};

struct SolveBudget {
  BuchbergerBudget groebner;
  std::size_t max_depth = 32;
  std::size_t max_components = 4096;
};

/// Splits the variety of `system` into components by branching on variables
/// that occur as factors, eliminating variables that occur linearly with a
/// constant coefficient, and computing a lex basis at the leaves.
std::vector<SolutionComponent> solve_components(const std::vector<MPoly>& system, const SolveBudget& budget = {});

/// Rational roots of a univariate polynomial in v.
std::vector<Rational> rational_roots(const MPoly& p, CVar v);

/// A point of V(eqs) with the listed nonzero conditions, found by
/// backtracking over small candidate values; random values when rng is set.
std::optional<Assignment> find_point(const std::vector<MPoly>& eqs, const std::vector<CVar>& vars,
                                     const std::vector<MPoly>& nonzero, std::mt19937_64* rng = nullptr);

Rational random_rational(std::mt19937_64& rng);

std::string to_string(const SolutionComponent& c);

}  // namespace opalg
