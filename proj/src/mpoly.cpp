#include "opalg/mpoly.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>
#include <sstream>

namespace opalg {

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view s) {
  Rational q;
  if (q.set_str(std::string(s), 10) != 0) throw std::invalid_argument("bad rational: " + std::string(s));
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + std::string(s));
  q.canonicalize();
  return q;
}

CVar::CVar(std::string_view name) {
  if (!is_identifier(name)) throw std::invalid_argument("invalid coefficient variable: " + std::string(name));
  id_ = cvar_symbols().intern(name);
}

std::string CVar::name() const { return cvar_symbols().name(id_); }

// ---------------------------------------------------------------- Monomial

Monomial Monomial::var(CVar v, std::uint32_t e) {
  Monomial m;
  if (e > 0) m.e_.emplace_back(v.id(), e);
  return m;
}

std::uint32_t Monomial::degree() const {
  std::uint32_t d = 0;
  for (auto [v, e] : e_) d += e;
  return d;
}

std::uint32_t Monomial::degree_in(CVar v) const {
  for (auto [id, e] : e_)
    if (id == v.id()) return e;
  return 0;
}

Monomial Monomial::operator*(const Monomial& rhs) const {
  Monomial r;
  auto a = e_.begin(), b = rhs.e_.begin();
  while (a != e_.end() || b != rhs.e_.end()) {
    if (b == rhs.e_.end() || (a != e_.end() && a->first < b->first)) r.e_.push_back(*a++);
    else if (a == e_.end() || b->first < a->first) r.e_.push_back(*b++);
    else {
      r.e_.emplace_back(a->first, a->second + b->second);
      ++a, ++b;
    }
  }
  return r;
}

bool Monomial::divides(const Monomial& rhs) const {
  auto b = rhs.e_.begin();
  for (auto [v, e] : e_) {
    while (b != rhs.e_.end() && b->first < v) ++b;
    if (b == rhs.e_.end() || b->first != v || b->second < e) return false;
  }
  return true;
}

Monomial Monomial::operator/(const Monomial& rhs) const {
  Monomial r;
  auto b = rhs.e_.begin();
  for (auto [v, e] : e_) {
    std::uint32_t sub = 0;
    while (b != rhs.e_.end() && b->first < v) ++b;
    if (b != rhs.e_.end() && b->first == v) sub = b->second;
    if (sub > e) throw std::logic_error("monomial division is not exact");
    if (e > sub) r.e_.emplace_back(v, e - sub);
  }
  return r;
}

Monomial Monomial::lcm(const Monomial& x, const Monomial& y) {
  Monomial r;
  auto a = x.e_.begin(), b = y.e_.begin();
  while (a != x.e_.end() || b != y.e_.end()) {
    if (b == y.e_.end() || (a != x.e_.end() && a->first < b->first)) r.e_.push_back(*a++);
    else if (a == x.e_.end() || b->first < a->first) r.e_.push_back(*b++);
    else {
      r.e_.emplace_back(a->first, std::max(a->second, b->second));
      ++a, ++b;
    }
  }
  return r;
}

bool Monomial::coprime(const Monomial& x, const Monomial& y) {
  auto b = y.e_.begin();
  for (auto [v, e] : x.e_) {
    while (b != y.e_.end() && b->first < v) ++b;
    if (b != y.e_.end() && b->first == v) return false;
  }
  return true;
}

Monomial Monomial::without(CVar v) const {
  Monomial r;
  for (auto ent : e_)
    if (ent.first != v.id()) r.e_.push_back(ent);
  return r;
}

bool operator<(const Monomial& a, const Monomial& b) {
  auto x = a.e_.begin(), y = b.e_.begin();
  while (x != a.e_.end() && y != b.e_.end()) {
    if (x->first != y->first) return x->first > y->first;  // b has the more significant variable
    if (x->second != y->second) return x->second < y->second;
    ++x, ++y;
  }
  return x == a.e_.end() && y != b.e_.end();
}

std::string to_string(const Monomial& m) {
  if (m.is_one()) return "1";
  std::vector<std::string> factors;
  for (auto [v, e] : m.entries()) factors.push_back(cvar_symbols().name(v) + (e > 1 ? "^" + std::to_string(e) : ""));
  std::sort(factors.begin(), factors.end());
  std::string s;
  for (const auto& f : factors) s += (s.empty() ? "" : "*") + f;
  return s;
}

std::int64_t MonomialOrder::rank(std::int32_t id) const {
  for (std::size_t i = 0; i < ranking.size(); ++i)
    if (ranking[i].id() == id) return static_cast<std::int64_t>(i);
  return static_cast<std::int64_t>(ranking.size()) + id;
}

bool MonomialOrder::greater(const Monomial& a, const Monomial& b) const {
  if (ranking.empty() && kind == Kind::Lex) return b < a;
  if (kind == Kind::GrevLex) {
    auto da = a.degree(), db = b.degree();
    if (da != db) return da > db;
  }
  // exponent differences by rank
  std::vector<std::pair<std::int64_t, std::int64_t>> diff;  // (rank, exp_a - exp_b)
  auto x = a.entries().begin(), y = b.entries().begin();
  while (x != a.entries().end() || y != b.entries().end()) {
    if (y == b.entries().end() || (x != a.entries().end() && x->first < y->first)) {
      diff.emplace_back(rank(x->first), x->second);
      ++x;
    } else if (x == a.entries().end() || y->first < x->first) {
      diff.emplace_back(rank(y->first), -static_cast<std::int64_t>(y->second));
      ++y;
    } else {
      if (x->second != y->second)
        diff.emplace_back(rank(x->first), static_cast<std::int64_t>(x->second) - y->second);
      ++x, ++y;
    }
  }
  if (diff.empty()) return false;
  if (kind == Kind::Lex) {
    auto it = std::min_element(diff.begin(), diff.end());
    return it->second > 0;
  }
  auto it = std::max_element(diff.begin(), diff.end());
  return it->second < 0;
}

// ---------------------------------------------------------------- MPoly

MPoly::MPoly(const Rational& c) {
  if (c != 0) t_.emplace(Monomial(), c);
}

MPoly MPoly::term(const Monomial& m, const Rational& c) {
  MPoly p;
  if (c != 0) p.t_.emplace(m, c);
  return p;
}

bool MPoly::is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_one()); }

Rational MPoly::constant_term() const {
  auto it = t_.find(Monomial());
  return it == t_.end() ? Rational(0) : it->second;
}

std::uint32_t MPoly::total_degree() const {
  std::uint32_t d = 0;
  for (const auto& [m, c] : t_) d = std::max(d, m.degree());
  return d;
}

std::uint32_t MPoly::degree_in(CVar v) const {
  std::uint32_t d = 0;
  for (const auto& [m, c] : t_) d = std::max(d, m.degree_in(v));
  return d;
}

std::vector<CVar> MPoly::variables() const {
  std::set<std::int32_t> ids;
  for (const auto& [m, c] : t_)
    for (auto [v, e] : m.entries()) ids.insert(v);
  std::vector<CVar> out;
  for (auto id : ids) out.push_back(CVar::from_id(id));
  return out;
}

bool MPoly::involves(CVar v) const {
  for (const auto& [m, c] : t_)
    if (m.degree_in(v) > 0) return true;
  return false;
}

void MPoly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = t_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) t_.erase(it);
  }
}

MPoly MPoly::operator-() const {
  MPoly r = *this;
  for (auto& [m, c] : r.t_) c = -c;
  return r;
}

MPoly& MPoly::operator+=(const MPoly& rhs) {
  for (const auto& [m, c] : rhs.t_) add_term(m, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& rhs) {
  for (const auto& [m, c] : rhs.t_) add_term(m, -c);
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  MPoly r;
  for (const auto& [ma, ca] : a.t_)
    for (const auto& [mb, cb] : b.t_) r.add_term(ma * mb, ca * cb);
  return r;
}

MPoly& MPoly::operator*=(const MPoly& rhs) { return *this = *this * rhs; }

MPoly MPoly::scaled(const Rational& c) const {
  if (c == 0) return {};
  MPoly r = *this;
  for (auto& [m, x] : r.t_) x *= c;
  return r;
}

MPoly MPoly::pow(unsigned n) const {
  MPoly r(1);
  for (unsigned i = 0; i < n; ++i) r *= *this;
  return r;
}

bool operator<(const MPoly& a, const MPoly& b) {
  return std::lexicographical_compare(a.t_.begin(), a.t_.end(), b.t_.begin(), b.t_.end(),
                                      [](const auto& x, const auto& y) {
                                        if (x.first < y.first) return true;
                                        if (y.first < x.first) return false;
                                        return x.second < y.second;
                                      });
}

Rational MPoly::evaluate(const std::map<CVar, Rational>& at) const {
  MPoly r = partial_evaluate(at);
  if (!r.is_constant()) throw std::invalid_argument("evaluate: unassigned variable in " + to_string(*this));
  return r.constant_term();
}

MPoly MPoly::partial_evaluate(const std::map<CVar, Rational>& at) const {
  MPoly r;
  for (const auto& [m, c] : t_) {
    Rational coeff = c;
    Monomial rest;
    for (auto [v, e] : m.entries()) {
      auto it = at.find(CVar::from_id(v));
      if (it == at.end()) {
        rest = rest * Monomial::var(CVar::from_id(v), e);
      } else {
        Rational p = 1;
        for (std::uint32_t i = 0; i < e; ++i) p *= it->second;
        coeff *= p;
      }
    }
    r.add_term(rest, coeff);
  }
  return r;
}

MPoly MPoly::substitute(CVar v, const MPoly& value) const {
  MPoly r;
  std::map<std::uint32_t, MPoly> powers;
  for (const auto& [m, c] : t_) {
    std::uint32_t e = m.degree_in(v);
    if (e == 0) {
      r.add_term(m, c);
      continue;
    }
    auto it = powers.find(e);
    if (it == powers.end()) it = powers.emplace(e, value.pow(e)).first;
    r += it->second * MPoly::term(m.without(v), c);
  }
  return r;
}

MPoly MPoly::coefficient_of(CVar v, std::uint32_t k) const {
  MPoly r;
  for (const auto& [m, c] : t_)
    if (m.degree_in(v) == k) r.add_term(m.without(v), c);
  return r;
}

Monomial MPoly::monomial_content() const {
  if (t_.empty()) return {};
  Monomial g = t_.begin()->first;
  for (const auto& [m, c] : t_) {
    Monomial next;
    for (auto [v, e] : g.entries()) {
      auto d = std::min(e, m.degree_in(CVar::from_id(v)));
      if (d > 0) next = next * Monomial::var(CVar::from_id(v), d);
    }
    g = next;
  }
  return g;
}

std::pair<Monomial, Rational> MPoly::leading(const MonomialOrder& ord) const {
  if (t_.empty()) throw std::logic_error("leading term of zero polynomial");
  if (ord.kind == MonomialOrder::Kind::Lex && ord.ranking.empty()) return *t_.rbegin();
  auto best = t_.begin();
  for (auto it = std::next(t_.begin()); it != t_.end(); ++it)
    if (ord.greater(it->first, best->first)) best = it;
  return *best;
}

MPoly MPoly::monic(const MonomialOrder& ord) const {
  if (t_.empty()) return {};
  return scaled(1 / leading(ord).second);
}

MPoly MPoly::normalized() const {
  if (t_.empty()) return {};
  mpz_class num_gcd = 0, den_lcm = 1;
  for (const auto& [m, c] : t_) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  }
  Rational s(den_lcm, num_gcd);
  s.canonicalize();
  if (t_.rbegin()->second < 0) s = -s;
  return scaled(s);
}

std::string to_string(const MPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    Rational a = abs(c);
    if (first) out += c < 0 ? "-" : "";
    else out += c < 0 ? " - " : " + ";
    first = false;
    if (m.is_one()) out += to_string(a);
    else if (a == 1) out += to_string(m);
    else out += to_string(a) + "*" + to_string(m);
  }
  return out;
}

bool is_zero(const MPoly& p) { return p.is_zero(); }
bool is_zero(const Rational& q) { return q == 0; }

namespace {

class MPolyParser {
 public:
  explicit MPolyParser(std::string_view s) : s_(s) {}

  MPoly parse() {
    MPoly p = expr();
    ws();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument(msg + " at position " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }
  void ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  MPoly expr() {
    MPoly r;
    bool neg = false;
    if (peek('-')) { ++pos_; neg = true; }
    else if (peek('+')) ++pos_;
    MPoly t = term();
    r = neg ? -t : t;
    while (true) {
      if (peek('+')) { ++pos_; r += term(); }
      else if (peek('-')) { ++pos_; r -= term(); }
      else break;
    }
    return r;
  }

  MPoly term() {
    MPoly r = power();
    while (true) {
      ws();
      if (peek('*')) { ++pos_; r *= power(); continue; }
      if (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '(')) {
        r *= power();
        continue;
      }
      break;
    }
    return r;
  }

  MPoly power() {
    MPoly b = factor();
    if (peek('^')) {
      ++pos_;
      ws();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      b = b.pow(static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start)))));
    }
    return b;
  }

  MPoly factor() {
    ws();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      MPoly r = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return r;
    }
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/')) ++pos_;
      return MPoly(parse_rational(s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      return MPoly::var(s_.substr(start, pos_ - start));
    }
    fail("unexpected character");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

MPoly parse_mpoly(std::string_view text) { return MPolyParser(text).parse(); }

// ---------------------------------------------------------------- Gröbner bases

namespace {

struct Lead {
  Monomial m;
  Rational c;
};

MPoly reduce_full(MPoly p, const std::vector<MPoly>& by, const std::vector<Lead>& leads,
                  const MonomialOrder& ord) {
  MPoly rem;
  while (!p.is_zero()) {
    auto [lm, lc] = p.leading(ord);
    bool reduced = false;
    for (std::size_t i = 0; i < by.size(); ++i) {
      if (!leads[i].m.divides(lm)) continue;
      Rational f = lc / leads[i].c;
      p -= by[i] * MPoly::term(lm / leads[i].m, f);
      reduced = true;
      break;
    }
    if (!reduced) {
      rem.add_term(lm, lc);
      p.add_term(lm, -lc);
    }
  }
  return rem;
}

std::vector<Lead> leads_of(const std::vector<MPoly>& ps, const MonomialOrder& ord) {
  std::vector<Lead> out;
  out.reserve(ps.size());
  for (const auto& p : ps) {
    auto [m, c] = p.leading(ord);
    out.push_back({m, c});
  }
  return out;
}

MPoly spoly(const MPoly& f, const Lead& lf, const MPoly& g, const Lead& lg) {
  Monomial l = Monomial::lcm(lf.m, lg.m);
  return f * MPoly::term(l / lf.m, 1 / lf.c) - g * MPoly::term(l / lg.m, 1 / lg.c);
}

}  // namespace

bool GroebnerBasis::is_unit_ideal() const { return polys.size() == 1 && polys[0].is_constant() && !polys[0].is_zero(); }

MPoly reduce(const MPoly& p, const std::vector<MPoly>& by, const MonomialOrder& order) {
  std::vector<MPoly> nz;
  for (const auto& b : by)
    if (!b.is_zero()) nz.push_back(b);
  return reduce_full(p, nz, leads_of(nz, order), order);
}

GroebnerBasis buchberger(const std::vector<MPoly>& gens, const MonomialOrder& order,
                         const BuchbergerBudget& budget) {
  GroebnerBasis gb{order, {}};
  std::vector<MPoly> G;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    if (g.is_constant()) {
      gb.polys = {MPoly(1)};
      return gb;
    }
    G.push_back(g.monic(order));
  }
  if (G.empty()) return gb;
  // Initial interreduction keeps the pair set small.
  {
    std::vector<MPoly> H;
    std::sort(G.begin(), G.end(), [&](const MPoly& a, const MPoly& b) {
      return order.greater(b.leading(order).first, a.leading(order).first);
    });
    for (const auto& g : G) {
      MPoly r = reduce(g, H, order);
      if (r.is_zero()) continue;
      if (r.is_constant()) {
        gb.polys = {MPoly(1)};
        return gb;
      }
      H.push_back(r.monic(order));
    }
    G = std::move(H);
  }
  std::vector<Lead> L = leads_of(G, order);
  std::deque<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t j = 1; j < G.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) pairs.emplace_back(i, j);
  std::size_t processed = 0;
  while (!pairs.empty()) {
    if (++processed > budget.max_pairs) throw ResourceLimit("Buchberger: S-pair budget exceeded");
    // normal selection: smallest lcm first
    auto best = pairs.begin();
    Monomial best_l = Monomial::lcm(L[best->first].m, L[best->second].m);
    for (auto it = std::next(pairs.begin()); it != pairs.end(); ++it) {
      Monomial l = Monomial::lcm(L[it->first].m, L[it->second].m);
      if (order.greater(best_l, l)) { best = it; best_l = l; }
    }
    auto [i, j] = *best;
    pairs.erase(best);
    if (Monomial::coprime(L[i].m, L[j].m)) continue;
    // chain criterion
    bool skip = false;
    for (std::size_t k = 0; k < G.size() && !skip; ++k) {
      if (k == i || k == j || !L[k].m.divides(best_l)) continue;
      auto pending = [&](std::size_t a, std::size_t b) {
        auto p = std::minmax(a, b);
        return std::find(pairs.begin(), pairs.end(), std::pair<std::size_t, std::size_t>(p.first, p.second)) != pairs.end();
      };
      if (!pending(i, k) && !pending(j, k)) skip = true;
    }
    if (skip) continue;
    MPoly r = reduce_full(spoly(G[i], L[i], G[j], L[j]), G, L, order);
    if (r.is_zero()) continue;
    if (r.is_constant()) {
      gb.polys = {MPoly(1)};
      return gb;
    }
    if (G.size() >= budget.max_basis) throw ResourceLimit("Buchberger: basis size budget exceeded");
    G.push_back(r.monic(order));
    auto [m, c] = G.back().leading(order);
    L.push_back({m, c});
    for (std::size_t k = 0; k + 1 < G.size(); ++k) pairs.emplace_back(k, G.size() - 1);
  }
  // minimal basis, then full interreduction
  std::vector<MPoly> minimal;
  for (std::size_t i = 0; i < G.size(); ++i) {
    bool redundant = false;
    for (std::size_t k = 0; k < G.size() && !redundant; ++k) {
      if (k == i || !L[k].m.divides(L[i].m)) continue;
      if (L[k].m == L[i].m && k > i) continue;  // keep the first of equal leads
      redundant = true;
    }
    if (!redundant) minimal.push_back(G[i]);
  }
  std::vector<MPoly> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<MPoly> others;
    for (std::size_t k = 0; k < minimal.size(); ++k)
      if (k != i) others.push_back(minimal[k]);
    reduced.push_back(reduce(minimal[i], others, order).monic(order));
  }
  std::sort(reduced.begin(), reduced.end(), [&](const MPoly& a, const MPoly& b) {
    return order.greater(a.leading(order).first, b.leading(order).first);
  });
  gb.polys = std::move(reduced);
  return gb;
}

MPoly nf_mod_ideal(const MPoly& p, const GroebnerBasis& gb) {
  if (gb.is_unit_ideal()) return {};
  return reduce(p, gb.polys, gb.order);
}

bool in_radical(const MPoly& v, const GroebnerBasis& gb, const BuchbergerBudget& budget) {
  if (gb.is_unit_ideal()) return true;
  if (nf_mod_ideal(v, gb).is_zero()) return true;
  CVar t("rabinowitsch_t");
  std::vector<MPoly> gens = gb.polys;
  gens.push_back(MPoly(1) - MPoly::var(t) * v);
  MonomialOrder ord{MonomialOrder::Kind::GrevLex, {}};
  return buchberger(gens, ord, budget).is_unit_ideal();
}

}  // namespace opalg
