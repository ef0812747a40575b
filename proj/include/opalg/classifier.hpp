#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "opalg/gsb.hpp"
#include "opalg/solve.hpp"

namespace opalg {

enum class AnsatzMode { DT, RBT };
std::string to_string(AnsatzMode m);
AnsatzMode parse_ansatz_mode(const std::string& s);

struct AnsatzTerm {
  Word word;  // totally linear in x, y
  CVar coeff;
};

/// N(x, y) (or M(x, y)) as a sum of indeterminate coefficients times
/// admissible monomials.
struct Ansatz {
  AnsatzMode mode = AnsatzMode::DT;
  std::vector<AnsatzTerm> terms;

  SymPoly body() const;
  std::vector<CVar> variables() const;
  /// The body at a point; variables missing from `at` are set to zero.
  SymPoly specialize(const Assignment& at) const;
  /// Coefficients of p on the basis, or nothing if p leaves its span.
  std::optional<Assignment> coordinates(const SymPoly& p) const;
  OpiPattern pattern() const;
};

/// DT: products of iterated brackets of x and y of depth <= degree; unit
/// terms carry at most `degree` brackets in total. RBT: RBRF words with at
/// most `degree` brackets. Without `reversed` only x-before-y words.
Ansatz build_ansatz(AnsatzMode mode, std::size_t max_op_degree, bool include_units, bool include_reversed);
/// An ansatz on the given words with coefficients named prefix1, prefix2, ...
Ansatz make_ansatz(AnsatzMode mode, const std::vector<Word>& words, const std::string& prefix = "k");

class ReductionBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ConstraintSystem {
  std::vector<MPoly> equations;
  std::vector<Word> provenance;  // the monomial each equation is the coefficient of
  /// RBT only: coefficients of monomials left unreduced because they need a
  /// unit rewrite, e.g. [[1] [1]]. Neither assumed zero nor cancelled.
  std::vector<MPoly> unresolved;
  std::vector<Word> unresolved_provenance;
  Strategy strategy = Strategy::LeftmostOutermost;
  UnitPolicy unit_policy = UnitPolicy::NonUnitOnly;
  std::size_t steps = 0;

  bool satisfied_by(const Assignment& at) const;
};

/// Reduces the associativity defect of the ansatz by its own symbolic rules
/// (leftmost-outermost) and reads off the coefficients. The unit policy only
/// applies to RBT.
ConstraintSystem extract_constraints(const Ansatz& a, UnitPolicy policy = UnitPolicy::NonUnitOnly,
                                     std::size_t step_cap = 4000);

struct ClassifiedComponent {
  SolutionComponent component;
  Assignment point;         // representative over every ansatz variable
  SymPoly representative;   // the ansatz at `point`
  TypeReport audit;         // type check of the representative
  std::vector<std::size_t> open_unresolved;  // unresolved constraints nonzero at `point`
};

struct Classification {
  Ansatz ansatz;
  ConstraintSystem constraints;
  std::vector<ClassifiedComponent> components;  // representatives pass their type check
  std::vector<ClassifiedComponent> rejected;    // representatives that fail it
  bool audited() const { return rejected.empty(); }
};

/// Default unit policy: AllowUnits for RBT, since non-unit reduction leaves
/// unresolved unit-bearing monomials.
Classification classify(const Ansatz& a, std::optional<UnitPolicy> policy = std::nullopt,
                        const SolveBudget& budget = {});

/// A random point of the component extended to every ansatz variable.
std::optional<Assignment> sample_point(const ClassifiedComponent& c, const Ansatz& a, std::mt19937_64& rng);

struct CatalogFamily {
  std::string name;
  AnsatzMode mode = AnsatzMode::DT;
  SymPoly body;              // over x, y with coefficients in the parameters
  std::vector<MPoly> ideal;  // conditions on the parameters

  std::vector<CVar> parameters() const;
  /// Whether some parameter point satisfying the ideal gives exactly p.
  bool contains(const SymPoly& p) const;
};

struct FamilyCatalog {
  std::vector<CatalogFamily> families;
  /// Six differential-type families; the third at supports i, j <= max_support.
  static FamilyCatalog differential(std::size_t max_support = 2);
  /// Fourteen Rota-Baxter-type families in lambda and d.
  static FamilyCatalog rota_baxter();
};

struct ComponentMatch {
  std::size_t component = 0;
  std::size_t samples = 0;
  std::size_t matched = 0;
  std::vector<std::string> families;  // families containing at least one sample
  std::vector<SymPoly> unmatched;     // first few samples outside every family
};

struct FamilyCoverage {
  std::string family;
  bool applicable = false;  // some specialization lies in the ansatz span
  std::size_t samples = 0;
  std::size_t covered = 0;
  std::vector<SymPoly> uncovered;
};

struct MatchReport {
  std::vector<ComponentMatch> components;
  std::vector<FamilyCoverage> families;
  std::size_t mismatches() const;
  bool ok() const { return mismatches() == 0; }
};

MatchReport match_catalog(const Classification& cls, const FamilyCatalog& catalog, std::size_t samples = 20,
                          std::uint64_t seed = 1);

}  // namespace opalg
