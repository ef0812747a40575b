#pragma once

#include <algorithm>
#include <concepts>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "opalg/mpoly.hpp"
#include "opalg/order.hpp"
#include "opalg/word.hpp"

namespace opalg {

/// Coefficient rings usable for operated polynomials: Rational and MPoly.
template <class C>
concept Coefficient = requires(C a, const C& b) {
  { a += b };
  { a -= b };
  { b * b } -> std::convertible_to<C>;
  { is_zero(b) } -> std::convertible_to<bool>;
  C(1);
};

class ZeroPolynomial : public std::logic_error {
 public:
  ZeroPolynomial() : std::logic_error("leading term of the zero polynomial") {}
};

class AmbiguousLeadingCoefficient : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MixedCoefficientRings : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Finite linear combination of bracketed words. Multiplication concatenates
/// words; coefficients are central.
template <Coefficient C>
class OpPoly {
 public:
  using Terms = std::map<Word, C>;
  using Coeff = C;

  OpPoly() = default;
  static OpPoly one() { return word(Word::unit()); }
  static OpPoly word(const Word& w, C c = C(1)) {
    OpPoly p;
    p.add_term(w, std::move(c));
    return p;
  }
  static OpPoly scalar(C c) { return word(Word::unit(), std::move(c)); }

  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  std::size_t size() const { return t_.size(); }
  C coeff(const Word& w) const {
    auto it = t_.find(w);
    return it == t_.end() ? C() : it->second;
  }

  void add_term(const Word& w, const C& c) {
    if (opalg::is_zero(c)) return;
    auto [it, inserted] = t_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (opalg::is_zero(it->second)) t_.erase(it);
    }
  }

  OpPoly& operator+=(const OpPoly& rhs) {
    for (const auto& [w, c] : rhs.t_) add_term(w, c);
    return *this;
  }
  OpPoly& operator-=(const OpPoly& rhs) {
    for (const auto& [w, c] : rhs.t_) {
      C neg = C();
      neg -= c;
      add_term(w, neg);
    }
    return *this;
  }
  friend OpPoly operator+(OpPoly a, const OpPoly& b) { return a += b; }
  friend OpPoly operator-(OpPoly a, const OpPoly& b) { return a -= b; }
  OpPoly operator-() const { return OpPoly() - *this; }

  friend OpPoly operator*(const OpPoly& a, const OpPoly& b) {
    OpPoly r;
    if (b.t_.size() == 1 && b.t_.begin()->second == C(1)) {
      const Word& wb = b.t_.begin()->first;
      for (const auto& [wa, ca] : a.t_) r.add_term(wa * wb, ca);
      return r;
    }
    if (a.t_.size() == 1 && a.t_.begin()->second == C(1)) {
      const Word& wa = a.t_.begin()->first;
      for (const auto& [wb, cb] : b.t_) r.add_term(wa * wb, cb);
      return r;
    }
    for (const auto& [wa, ca] : a.t_)
      for (const auto& [wb, cb] : b.t_) r.add_term(wa * wb, ca * cb);
    return r;
  }
  OpPoly& operator*=(const OpPoly& rhs) { return *this = *this * rhs; }

  /// *this += p * s without a temporary.
  OpPoly& add_scaled(const OpPoly& p, const C& s) {
    if (s == C(1)) return *this += p;
    for (const auto& [w, c] : p.t_) add_term(w, c * s);
    return *this;
  }

  OpPoly scaled(const C& s) const {
    if (s == C(1)) return *this;
    OpPoly r;
    for (const auto& [w, c] : t_) r.add_term(w, c * s);
    return r;
  }

  /// Linear extension of the operator: sum c_i u_i  ->  sum c_i [u_i].
  OpPoly bracket() const {
    OpPoly r;
    for (const auto& [w, c] : t_) r.t_.emplace(Word::bracket(w), c);
    return r;
  }

  template <class F>
  auto map_coeffs(F&& f) const {
    using D = std::decay_t<decltype(f(std::declval<const C&>()))>;
    OpPoly<D> r;
    for (const auto& [w, c] : t_) r.add_term(w, f(c));
    return r;
  }

  /// Leading word under `ord` together with its coefficient.
  std::pair<Word, C> leading(const OrderConfig& ord = {}) const {
    if (t_.empty()) throw ZeroPolynomial();
    auto best = t_.begin();
    for (auto it = std::next(best); it != t_.end(); ++it)
      if (word_less(best->first, it->first, ord)) best = it;
    return *best;
  }

  /// Words sorted by `ord`, largest first.
  std::vector<Word> support(const OrderConfig& ord = {}) const {
    std::vector<Word> out;
    for (const auto& [w, c] : t_) out.push_back(w);
    std::sort(out.begin(), out.end(), [&](const Word& a, const Word& b) { return word_less(b, a, ord); });
    return out;
  }

  std::size_t max_depth() const {
    std::size_t d = 0;
    for (const auto& [w, c] : t_) d = std::max(d, w.depth());
    return d;
  }

  friend bool operator==(const OpPoly&, const OpPoly&) = default;

 private:
  Terms t_;
};

using RatPoly = OpPoly<Rational>;
using SymPoly = OpPoly<MPoly>;

/// Coefficient-to-text with a flag telling whether it is a single signed
/// factor (so it can precede a word without parentheses).
std::string coefficient_text(const Rational& c);
std::string coefficient_text(const MPoly& c);

template <Coefficient C>
std::string to_string(const OpPoly<C>& p, const OrderConfig& ord = {});

SymPoly lift(const RatPoly& p);
/// Requires every coefficient to be a constant.
RatPoly lower(const SymPoly& p);

/// q|_s: linear extension of word substitution into a ⋆-word.
template <Coefficient C>
OpPoly<C> poly_substitute(const StarWord& q, const OpPoly<C>& s) {
  OpPoly<C> r;
  for (const auto& [w, c] : s.terms()) r.add_term(substitute(q, w), c);
  return r;
}

/// q|_{s1,s2} for a two-star word.
template <Coefficient C>
OpPoly<C> poly_substitute2(const TwoStarWord& q, const OpPoly<C>& s1, const OpPoly<C>& s2) {
  OpPoly<C> r;
  for (const auto& [w1, c1] : s1.terms())
    for (const auto& [w2, c2] : s2.terms()) r.add_term(substitute2(q, w1, w2), c1 * c2);
  return r;
}

/// The operated-algebra morphism that sends each listed generator to a
/// polynomial and fixes the others (the substitution map of an OPI).
template <Coefficient C>
OpPoly<C> evaluate_word(const Word& w, const std::vector<std::pair<Generator, OpPoly<C>>>& at) {
  OpPoly<C> r = OpPoly<C>::one();
  for (const Word& a : w.atoms()) {
    if (a.is_bracket_atom()) {
      r *= evaluate_word(a.inner(), at).bracket();
      continue;
    }
    auto g = Generator::from_id(a.tokens()[0]);
    auto it = std::find_if(at.begin(), at.end(), [g](const auto& e) { return e.first == g; });
    r *= it == at.end() ? OpPoly<C>::word(a) : it->second;
  }
  return r;
}

template <Coefficient C, Coefficient D>
OpPoly<D> evaluate(const OpPoly<C>& p, const std::vector<std::pair<Generator, OpPoly<D>>>& at) {
  OpPoly<D> r;
  for (const auto& [w, c] : p.terms()) {
    D coeff;
    if constexpr (std::is_same_v<C, D>) coeff = c;
    else coeff = D(c);
    r += evaluate_word(w, at).scaled(coeff);
  }
  return r;
}

/// Word-valued substitution of generators, done by token splicing.
template <Coefficient C>
OpPoly<C> substitute_words(const OpPoly<C>& p, const std::vector<std::pair<Generator, Word>>& at) {
  std::vector<std::pair<Word::Token, Word>> subs;
  for (const auto& [g, w] : at) subs.emplace_back(g.id(), w);
  OpPoly<C> r;
  for (const auto& [w, c] : p.terms()) r.add_term(w.replace(subs), c);
  return r;
}

/// Parses operated polynomials: sums and products of numbers, coefficient
/// variables, generators, "1", parentheses and "[...]". Identifiers in `gens`
/// (or any identifier, if `gens` is open) are generators; the rest are CVars.
SymPoly parse_poly(std::string_view text, const GeneratorSet& gens);

}  // namespace opalg
