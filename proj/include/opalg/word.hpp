#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "opalg/symbols.hpp"

namespace opalg {

/// A bracketed word, stored as its balanced-bracket token string.
///
/// Generator occurrences are non-negative symbol ids; the bracket and
/// placeholder letters are negative sentinels. The empty string is the unit.
/// Two words are equal iff their token strings are equal, which is the same
/// as equality of their standard decompositions.
class Word {
 public:
  using Token = std::int32_t;
  static constexpr Token kOpen = -1;
  static constexpr Token kClose = -2;
  static constexpr Token kStar = -3;
  static constexpr Token kStar1 = -4;
  static constexpr Token kStar2 = -5;

  Word() = default;

  static Word unit() { return {}; }
  static Word gen(Generator g) { return Word(std::vector<Token>{g.id()}); }
  static Word gen(std::string_view name) { return gen(Generator(name)); }
  static Word bracket(const Word& inner);
  static Word star() { return Word(std::vector<Token>{kStar}); }
  static Word star1() { return Word(std::vector<Token>{kStar1}); }
  static Word star2() { return Word(std::vector<Token>{kStar2}); }
  /// Trusts the caller that `tokens` is balanced.
  static Word from_tokens(std::vector<Token> tokens) { return Word(std::move(tokens)); }

  bool is_unit() const { return tok_.empty(); }
  std::span<const Token> tokens() const { return tok_; }
  std::size_t size() const { return tok_.size(); }

  /// Number of atoms in the standard decomposition.
  std::size_t breadth() const;
  /// Maximal bracket nesting.
  std::size_t depth() const;
  /// Number of generator occurrences, with multiplicity.
  std::size_t deg() const;
  /// Occurrences of a placeholder token, counted through brackets.
  std::size_t count(Token t) const;

  /// Standard decomposition into indecomposable atoms.
  std::vector<Word> atoms() const;
  bool is_atom() const;
  bool is_bracket_atom() const;
  bool is_generator() const { return tok_.size() == 1 && tok_[0] >= 0; }
  /// Inner word of a bracket atom.
  Word inner() const;

  Word operator*(const Word& rhs) const;
  Word& operator*=(const Word& rhs);

  /// Replaces every occurrence of `placeholder` by `w`.
  Word replace(Token placeholder, const Word& w) const;
  /// Simultaneous replacement of several letters in one pass.
  Word replace(std::span<const std::pair<Token, Word>> subs) const;

  friend bool operator==(const Word&, const Word&) = default;
  /// Canonical storage order on token strings; not a monomial order.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    return a.tok_ <=> b.tok_;
  }

  std::size_t hash() const;

 private:
  explicit Word(std::vector<Token> t) : tok_(std::move(t)) {}
  std::vector<Token> tok_;
};

std::string to_string(const Word& w);

class ParseError : public std::runtime_error {
 public:
  enum class Kind { UnbalancedBrackets, UnknownGenerator, EmptyBracketWithoutUnit, UnexpectedToken };
  ParseError(Kind kind, std::size_t position, const std::string& msg)
      : std::runtime_error(msg + " at position " + std::to_string(position)),
        kind_(kind), position_(position) {}
  Kind kind() const { return kind_; }
  std::size_t position() const { return position_; }

 private:
  Kind kind_;
  std::size_t position_;
};

/// Parses the word grammar:  word := "1" | atom+ ;  atom := IDENT | "[" word "]".
/// Whitespace and "*" both concatenate. With `allow_placeholders`, the letters
/// ⋆, ⋆1, ⋆2 (or ASCII @, @1, @2) are accepted.
Word parse_word(std::string_view text, const GeneratorSet& gens, bool allow_placeholders = false);

/// A word with exactly one ⋆.
class StarWord {
 public:
  explicit StarWord(Word w);
  static StarWord identity() { return StarWord(Word::star()); }
  const Word& word() const { return w_; }
  /// Token offset of the ⋆ in the string form.
  std::size_t position() const;

  friend bool operator==(const StarWord&, const StarWord&) = default;

 private:
  Word w_;
};

/// A word with exactly one ⋆1 and one ⋆2.
class TwoStarWord {
 public:
  explicit TwoStarWord(Word w);
  const Word& word() const { return w_; }
  /// The ⋆-word obtained by turning ⋆1 into ⋆ (⋆2 kept).
  Word first_as_star() const;
  Word second_as_star() const;

 private:
  Word w_;
};

Word substitute(const StarWord& q, const Word& u);
Word substitute2(const TwoStarWord& q, const Word& u1, const Word& u2);
/// compose(q1, q2) splices q2 at the ⋆ of q1.
StarWord compose(const StarWord& q1, const StarWord& q2);

/// Every context q with q|pattern = w, left to right in the string form.
std::vector<StarWord> occurrences(const Word& w, const Word& pattern);

enum class Location { Separated, Overlapping, Nested };
class PreconditionViolated : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};
Location classify_pair(const Word& w, const StarWord& q1, const StarWord& q2, const Word& u1,
                       const Word& u2);

/// Context of the atom-interval [first, last) of w's standard decomposition,
/// i.e. the star word with that run of top-level atoms replaced by ⋆.
StarWord context_of_atoms(const Word& w, std::size_t first, std::size_t last);

}  // namespace opalg

template <>
struct std::hash<opalg::Word> {
  std::size_t operator()(const opalg::Word& w) const noexcept { return w.hash(); }
};
