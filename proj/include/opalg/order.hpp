#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "opalg/word.hpp"

namespace opalg {

/// How whole words are compared once atoms have an order.
enum class WordComparison {
  /// deg_Z, then the lexicographic order on the generator-bearing atoms, then
  /// a bracket weight (generators 1, concatenation adds, [w] weighs
  /// (weight(w) + 2)^2), then the number of atoms, then plain lexicographic
  /// order. Default.
  Skeleton,
  /// Plain lexicographic order on atom sequences with the unit minimal.
  PureLex,
  /// deg_Z, then breadth, then lexicographic.
  DegLenLex,
};

/// Atoms are compared by deg_Z, then generators below brackets, generators by
/// rank, brackets by recursive comparison of their contents.
struct OrderConfig {
  std::vector<Generator> generator_rank;  // earlier = smaller
  WordComparison word_comparison = WordComparison::Skeleton;

  static OrderConfig with_generators(const GeneratorSet& gens,
                                     WordComparison mode = WordComparison::Skeleton);
  std::int64_t rank(std::int32_t generator_id) const;
};

std::strong_ordering compare(const Word& u, const Word& v, const OrderConfig& cfg = {});

inline bool word_less(const Word& u, const Word& v, const OrderConfig& cfg = {}) {
  return compare(u, v, cfg) == std::strong_ordering::less;
}

std::optional<WordComparison> parse_word_comparison(const std::string& s);
std::string to_string(WordComparison m);

/// Random words and contexts for property checks.
struct WordSampler {
  std::vector<Generator> gens;
  std::size_t max_breadth = 4;
  std::size_t max_depth = 3;
  /// Probability that an atom is a bracket.
  double bracket_prob = 0.35;

  Word word(std::mt19937_64& rng, std::size_t depth_left, bool allow_unit = true) const;
  Word nonunit(std::mt19937_64& rng) const { return word(rng, max_depth, false); }
  StarWord context(std::mt19937_64& rng) const;
};

struct OrderViolation {
  std::string kind;  // "monotonicity", "antisymmetry", "unit", "transitivity"
  std::string q, u, v;
};

struct PropertyReport {
  std::size_t samples = 0;
  std::size_t violation_count = 0;
  std::vector<OrderViolation> violations;  // first few only
  bool ok() const { return violation_count == 0; }
};

/// Randomized check of the monomial-order laws: 1 <= u, u < v implies
/// q|u < q|v, antisymmetry and transitivity on sampled words.
PropertyReport check_monomial_order(const OrderConfig& cfg, const WordSampler& sampler,
                                    std::size_t samples, std::uint64_t seed = 1);

}  // namespace opalg
