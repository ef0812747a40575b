#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "opalg/rewrite.hpp"

namespace opalg {

/// Truncation of the infinite instance family: words of depth <= max_depth,
/// at most max_breadth atoms at every nesting level and at most max_degree
/// generator occurrences, over max_generators generators.
struct TruncationBound {
  std::size_t max_breadth = 3;
  std::size_t max_depth = 2;
  std::size_t max_generators = 3;
  std::size_t max_degree = 3;
};

std::string to_string(const TruncationBound& b);

/// Every word within the bound over `gens`, the unit included, in
/// enumeration order (by depth, degree, then tokens).
std::vector<Word> enumerate_words(const std::vector<Generator>& gens, const TruncationBound& bound);

/// The first n of u, v, w, t, s, ...
std::vector<Generator> fresh_generators(std::size_t n);

/// S = { phi(u, v) : u, v non-unit } for a differential-type pattern.
struct GeneratorSystem {
  OpiPattern pattern;
  RuleSchema schema;

  explicit GeneratorSystem(OpiPattern p);
  /// [u v] - N(u, v), monic with leading word [u v] by construction.
  SymPoly instance(const Word& u, const Word& v) const;
};

struct CompositionRecord {
  enum class Kind { Intersection, Including };
  Kind kind = Kind::Intersection;
  SymPoly f, g;
  Word w;
  Word mu, nu;                      // intersection: w = lead(f) mu = nu lead(g)
  std::optional<StarWord> q;        // including: lead(f) = q|lead(g)
  SymPoly value;
  bool trivial = false;
  SymPoly residue;
};

/// Leading word of a polynomial with a constant leading coefficient, scaled
/// to be monic. Throws AmbiguousLeadingCoefficient on symbolic ones.
SymPoly make_monic(const SymPoly& p, const OrderConfig& ord = {});

/// Intersection and including compositions of f and g (both made monic).
std::vector<CompositionRecord> compositions(const SymPoly& f, const SymPoly& g, const OrderConfig& ord = {});

/// Searches for a reduction of comp.value to zero; trivial iff one is found.
VerdictKind decide_triviality(CompositionRecord& comp, Rewriter& rw, const SearchOptions& search = {});

struct GsbReport {
  std::string pattern;
  TruncationBound bound;
  std::size_t leading_words = 0;
  std::size_t instances = 0;
  std::size_t intersection = 0;
  std::size_t including = 0;
  std::size_t trivial = 0;
  std::size_t nontrivial = 0;
  /// Compositions whose search ran out of budget.
  std::size_t inconclusive = 0;
  /// Instances whose leading word is not above every monomial of N(u, v).
  std::size_t order_exceptions = 0;
  std::vector<CompositionRecord> failures;  // first few nontrivial or inconclusive records
  bool gsb() const { return nontrivial == 0 && inconclusive == 0; }
};

/// All instance pairs with leading words inside the bound and all their
/// compositions. Only Sigma patterns are accepted.
GsbReport gsb_check_truncated(const GeneratorSystem& sys, const TruncationBound& bound, const OrderConfig& ord = {},
                              const SearchOptions& search = {false, 256}, std::size_t threads = 0);

struct IrrReport {
  std::vector<Word> words;          // Irr(S) within the bound
  std::vector<Word> delta_words;    // those built from iterated brackets of generators only
  std::vector<Word> unit_surplus;   // those containing a bracketed unit
};

/// Words within the bound with no [a b] subterm (a, b non-unit).
IrrReport irr_enumerate(const GeneratorSystem& sys, const std::vector<Generator>& gens, const TruncationBound& bound);

struct CdlReport {
  std::size_t words = 0;
  std::size_t not_in_irr_span = 0;  // normal forms with a remaining redex or step cap
  std::size_t irr_words = 0;
  std::size_t irr_moved = 0;        // irreducible words changed by nf
  std::size_t ideal_samples = 0;
  std::size_t ideal_nonzero = 0;    // sampled ideal elements with nonzero nf
  bool ok() const { return not_in_irr_span == 0 && irr_moved == 0 && ideal_nonzero == 0; }
};

CdlReport cdl_direct_sum_check(const GeneratorSystem& sys, const TruncationBound& bound, std::size_t ideal_samples = 100,
                               std::uint64_t seed = 1);

enum class TypeVerdict { Accepted, NotTotallyLinear, NotDRF, NotRBRF, NotReducible, Inconclusive };
std::string to_string(TypeVerdict v);

struct TypeReport {
  TypeVerdict verdict = TypeVerdict::Inconclusive;
  SymPoly defect;     // the associativity defect over u, v, w
  Verdict reduction;  // reduces_to_zero on the defect
  /// The nonzero normal form with two of u, v, w identified, e.g. "w = u".
  std::vector<std::pair<std::string, SymPoly>> specializations;
  std::string note;
  bool accepted() const { return verdict == TypeVerdict::Accepted; }
};

struct TypeCheckOptions {
  std::size_t step_cap = 10000;
  std::size_t tree_budget = 4000;
  /// Pi only: retry with unit rewrites when the non-unit system is stuck.
  bool unit_fallback = true;
};

/// N(u v, w) - N(u, v w), or M(M(u, v), w) - M(u, M(v, w)), over fresh u, v, w.
SymPoly associativity_defect(const OpiPattern& p);

/// N(u v, w) - N(u, v w) reduces to zero under Sigma.
TypeReport dt_check(const SymPoly& n, const std::vector<MPoly>& ideal = {}, const TypeCheckOptions& opts = {});
/// M(M(u, v), w) - M(u, M(v, w)) reduces to zero under Pi.
TypeReport rbt_check(const SymPoly& m, const std::vector<MPoly>& ideal = {}, const TypeCheckOptions& opts = {});
TypeReport type_check(const OpiPattern& p, const TypeCheckOptions& opts = {});

/// The operator d of the free algebra: d(z^(i)) = z^(i+1) and
/// d(u1 u2 ... uk) = N(u1, u2 ... uk) with the brackets of N read as d.
SymPoly free_dt_operator_nf(const Word& u, const OpiPattern& p);

/// Renders p as "L (q) R" with the longest common left and right atom
/// factors pulled out, e.g. "(u v - v u) [u]".
std::string to_factored_string(const SymPoly& p);

/// Renders iterated brackets of a generator as z^(n).
std::string to_delta_string(const Word& w);
std::string to_delta_string(const SymPoly& p);

}  // namespace opalg
