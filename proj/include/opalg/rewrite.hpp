#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "opalg/pattern.hpp"

namespace opalg {

/// Pi only: OneSided rewrites [a][1] and [1][b] but never [1][1].
enum class UnitPolicy { NonUnitOnly, OneSided, AllowUnits };
enum class Strategy { LeftmostOutermost, LeftmostInnermost };

std::optional<Strategy> parse_strategy(const std::string& s);
std::optional<UnitPolicy> parse_unit_policy(const std::string& s);
std::string to_string(Strategy s);
std::string to_string(UnitPolicy p);

class SchemaViolation : public std::invalid_argument {
 public:
  enum class Kind { NotTotallyLinear, NotDRF, NotRBRF, UnsupportedPolicy };
  SchemaViolation(Kind k, const std::string& what) : std::invalid_argument(what), kind(k) {}
  Kind kind;
};

std::string to_string(SchemaViolation::Kind k);

/// Sigma: [a b] -> N(a, b).  Pi: [a][b] -> [M(a, b)].  Empty: no rules.
struct RuleSchema {
  enum class Kind { Sigma, Pi, Empty };

  Kind kind = Kind::Empty;
  SymPoly body;
  UnitPolicy unit_policy = UnitPolicy::NonUnitOnly;
  std::vector<MPoly> constraint_ideal;

  /// Validates total linearity and DRF / RBRF; throws SchemaViolation.
  static RuleSchema from_pattern(const OpiPattern& p, UnitPolicy policy = UnitPolicy::NonUnitOnly);
  static RuleSchema sigma(SymPoly n, std::vector<MPoly> ideal = {});
  static RuleSchema pi(SymPoly m, std::vector<MPoly> ideal = {}, UnitPolicy policy = UnitPolicy::NonUnitOnly);
  static RuleSchema empty() { return {}; }
};

/// One match of a rule: the word is context|_{subterm}, subterm is [a b]
/// (Sigma) or [a][b] (Pi), spanning tokens [begin, end).
struct Redex {
  StarWord context;
  Word a, b;
  std::size_t begin = 0, end = 0;
};

std::vector<Redex> find_redexes(const Word& w, const RuleSchema& schema);

/// The polynomial obtained by firing one redex of w.
SymPoly fire(const Word& w, const Redex& r, const RuleSchema& schema);

struct ReductionStep {
  Word word;  // the replaced monomial
  Redex redex;
  RuleSchema::Kind kind;
  SymPoly before, after;
};

enum class ReductionStatus { NormalForm, StepCapExceeded };

struct ReductionTrace {
  std::vector<ReductionStep> steps;  // only filled when tracing
  ReductionStatus status = ReductionStatus::NormalForm;
  std::size_t step_count = 0;
  /// Steps whose replaced monomial was not strictly above every new one.
  std::vector<std::string> order_violations;
  /// Steps whose redex measure did not strictly decrease.
  std::vector<std::string> measure_violations;
};

std::string render_trace(const ReductionTrace& t);

struct ReductionOptions {
  Strategy strategy = Strategy::LeftmostOutermost;
  std::size_t step_cap = 100000;
  /// The word memo is dropped between calls once it holds this many entries.
  std::size_t memo_limit = 200000;
  bool trace = false;
  /// When set, every traced step is checked against this order.
  std::optional<OrderConfig> check_order;
  /// When true, every traced step is checked against the redex measure.
  bool check_measure = false;
};

struct NormalFormResult {
  SymPoly value;
  ReductionTrace trace;
  bool ok() const { return trace.status == ReductionStatus::NormalForm; }
};

/// Multiset (sorted descending) of the deg_Z sizes of all bracket subterms.
std::vector<std::size_t> redex_measure(const Word& w);
/// Dershowitz–Manna comparison of two measures.
bool measure_less(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b);

/// Reduction engine bound to one schema. Normal forms of single words are
/// memoized, so a Rewriter should be reused across calls for the same schema.
class Rewriter {
 public:
  explicit Rewriter(RuleSchema schema, ReductionOptions opts = {});

  const RuleSchema& schema() const { return schema_; }
  const ReductionOptions& options() const { return opts_; }

  NormalFormResult normal_form(const SymPoly& p);
  NormalFormResult normal_form(const Word& w) { return normal_form(SymPoly::word(w)); }
  /// The strategy-chosen redex of w, if any.
  std::optional<Redex> select(const Word& w) const;
  /// Coefficients reduced modulo the constraint ideal.
  SymPoly reduce_coefficients(const SymPoly& p) const;
  MPoly reduce_coefficient(const MPoly& c) const;

 private:
  struct CapHit {
    bool steps_exhausted;
  };
  const SymPoly& nf_word(const Word& w, std::size_t& steps, std::size_t depth);
  SymPoly nf_product(const Word& w, std::size_t& steps, std::size_t depth);
  NormalFormResult traced(const SymPoly& p, std::size_t cap);

  RuleSchema schema_;
  ReductionOptions opts_;
  std::optional<GroebnerBasis> ideal_;
  std::unordered_map<Word, SymPoly> memo_;
  std::unordered_set<Word> active_;
};

enum class VerdictKind { Yes, No, Inconclusive };
std::string to_string(VerdictKind v);

struct Verdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  SymPoly witness;  // a normal form reached when the answer is not Yes
  std::size_t steps = 0;
  std::size_t explored = 0;  // polynomial states visited by the search
  std::string note;
  bool yes() const { return kind == VerdictKind::Yes; }
};

struct SearchOptions {
  /// Skip the search and answer No from a nonzero normal form.
  bool certified_confluent = false;
  std::size_t tree_budget = 4000;
};

/// Some reduction of p reaches 0.
Verdict reduces_to_zero(const SymPoly& p, Rewriter& rw, const SearchOptions& so = {});
/// f and g have a common reduct.
Verdict joinable(const SymPoly& f, const SymPoly& g, Rewriter& rw, const SearchOptions& so = {});

struct ConfluenceBound {
  std::size_t max_breadth = 4;
  std::size_t max_depth = 2;
  std::size_t max_leaves = 5;
  bool stop_at_counterexample = false;  // return at the first non-joinable peak
};

struct Peak {
  Word word;
  Redex first, second;
  SymPoly left, right;
  Verdict verdict;
};

struct ConfluenceReport {
  ConfluenceBound bound;
  std::size_t words = 0;
  std::size_t peaks = 0;
  std::vector<Peak> failures;  // non-joinable or inconclusive
  bool confluent() const { return failures.empty(); }
  /// Some peak was left undecided and none was shown non-joinable.
  bool inconclusive() const;
};

/// Checks every peak on words with distinct fresh leaves within the bound.
/// Every overlap of two redexes on any word is a substitution image of one of
/// these, so joinability here transfers to all instances.
ConfluenceReport local_confluence_check(Rewriter& rw, const ConfluenceBound& bound = {},
                                        const SearchOptions& so = {});

/// Linear words over fresh leaves (no unit brackets) within the bound.
std::vector<Word> linear_shapes(const ConfluenceBound& bound);

}  // namespace opalg
