#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "opalg/symbols.hpp"

namespace opalg {

using Rational = mpq_class;

std::string to_string(const Rational& q);
/// Accepts "3", "-2", "1/2".
Rational parse_rational(std::string_view s);

/// A coefficient indeterminate (a_{ij}, b, c, e, λ, d, ...).
class CVar {
 public:
  CVar() = default;
  explicit CVar(std::string_view name);
  static CVar from_id(std::int32_t id) {
    CVar v;
    v.id_ = id;
    return v;
  }
  std::int32_t id() const { return id_; }
  std::string name() const;
  friend bool operator==(CVar a, CVar b) { return a.id_ == b.id_; }
  friend auto operator<=>(CVar a, CVar b) { return a.id_ <=> b.id_; }

 private:
  std::int32_t id_ = -1;
};

/// Power product of CVars, sparse and sorted by variable id.
class Monomial {
 public:
  using Entry = std::pair<std::int32_t, std::uint32_t>;

  Monomial() = default;
  static Monomial var(CVar v, std::uint32_t e = 1);

  const std::vector<Entry>& entries() const { return e_; }
  bool is_one() const { return e_.empty(); }
  std::uint32_t degree() const;
  std::uint32_t degree_in(CVar v) const;

  Monomial operator*(const Monomial& rhs) const;
  bool divides(const Monomial& rhs) const;
  /// this / rhs, requires rhs | this.
  Monomial operator/(const Monomial& rhs) const;
  static Monomial lcm(const Monomial& a, const Monomial& b);
  static bool coprime(const Monomial& a, const Monomial& b);
  Monomial without(CVar v) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  /// Canonical storage order (lex, smaller variable id is more significant).
  friend bool operator<(const Monomial& a, const Monomial& b);

 private:
  std::vector<Entry> e_;
};

std::string to_string(const Monomial& m);

/// Monomial order for Gröbner computations. Variables listed first are
/// largest; unlisted variables rank after them by id.
struct MonomialOrder {
  enum class Kind { Lex, GrevLex };
  Kind kind = Kind::Lex;
  std::vector<CVar> ranking;

  /// Returns true if a > b.
  bool greater(const Monomial& a, const Monomial& b) const;
  std::int64_t rank(std::int32_t id) const;
};

/// Multivariate polynomial over the rationals in commuting CVars.
class MPoly {
 public:
  using Terms = std::map<Monomial, Rational>;

  MPoly() = default;
  MPoly(const Rational& c);  // NOLINT(google-explicit-constructor)
  MPoly(long c) : MPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  MPoly(int c) : MPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  static MPoly var(CVar v) { return term(Monomial::var(v), 1); }
  static MPoly var(std::string_view name) { return var(CVar(name)); }
  static MPoly term(const Monomial& m, const Rational& c);

  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  std::size_t size() const { return t_.size(); }
  std::uint32_t total_degree() const;
  std::uint32_t degree_in(CVar v) const;
  std::vector<CVar> variables() const;
  bool involves(CVar v) const;

  void add_term(const Monomial& m, const Rational& c);

  MPoly operator-() const;
  MPoly& operator+=(const MPoly& rhs);
  MPoly& operator-=(const MPoly& rhs);
  MPoly& operator*=(const MPoly& rhs);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  MPoly scaled(const Rational& c) const;
  MPoly pow(unsigned n) const;

  friend bool operator==(const MPoly&, const MPoly&) = default;
  friend bool operator<(const MPoly& a, const MPoly& b);

  /// Exact evaluation; every variable of the polynomial must be assigned.
  Rational evaluate(const std::map<CVar, Rational>& at) const;
  /// Substitutes the assigned variables and keeps the rest symbolic.
  MPoly partial_evaluate(const std::map<CVar, Rational>& at) const;
  MPoly substitute(CVar v, const MPoly& value) const;

  /// Coefficient of v^k, as a polynomial in the other variables.
  MPoly coefficient_of(CVar v, std::uint32_t k) const;
  /// Largest monomial dividing every term.
  Monomial monomial_content() const;
  /// Leading term under `ord`.
  std::pair<Monomial, Rational> leading(const MonomialOrder& ord) const;
  MPoly monic(const MonomialOrder& ord) const;
  /// Scales to integer coefficients with positive leading coefficient under
  /// the canonical order and gcd 1.
  MPoly normalized() const;

 private:
  Terms t_;
};

std::string to_string(const MPoly& p);
bool is_zero(const MPoly& p);
bool is_zero(const Rational& q);

/// Parses "b^2 - b - c*e" style text; every identifier is a CVar.
MPoly parse_mpoly(std::string_view text);

class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GroebnerBasis {
  MonomialOrder order;
  std::vector<MPoly> polys;  // reduced, monic, sorted by leading monomial descending

  bool is_unit_ideal() const;
  bool is_zero_ideal() const { return polys.empty(); }
};

struct BuchbergerBudget {
  std::size_t max_pairs = 200000;
  std::size_t max_basis = 5000;
};

GroebnerBasis buchberger(const std::vector<MPoly>& gens, const MonomialOrder& order = {},
                         const BuchbergerBudget& budget = {});
MPoly nf_mod_ideal(const MPoly& p, const GroebnerBasis& gb);
/// Reduces p by an arbitrary list (not necessarily a basis).
MPoly reduce(const MPoly& p, const std::vector<MPoly>& by, const MonomialOrder& order);
/// True if v vanishes on the whole variety of the basis (radical membership).
bool in_radical(const MPoly& v, const GroebnerBasis& gb, const BuchbergerBudget& budget = {});

}  // namespace opalg
