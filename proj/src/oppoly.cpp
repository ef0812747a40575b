#include "opalg/oppoly.hpp"

#include <cctype>

namespace opalg {

namespace {

struct SignedText {
  bool negative;
  std::string magnitude;  // empty when the magnitude is 1
  bool grouped;           // needs "*" before a word
};

SignedText split(const Rational& c) {
  Rational a = abs(c);
  return {c < 0, a == 1 ? std::string() : to_string(a), false};
}

SignedText split(const MPoly& c) {
  if (c.is_constant()) return split(c.constant_term());
  if (c.size() == 1) {
    const auto& [m, k] = *c.terms().begin();
    Rational a = abs(k);
    std::string mag = a == 1 ? to_string(m) : to_string(a) + "*" + to_string(m);
    return {k < 0, mag, true};
  }
  return {false, "(" + to_string(c) + ")", true};
}

template <class C>
std::string render(const OpPoly<C>& p, const OrderConfig& ord) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const Word& w : p.support(ord)) {
    SignedText s = split(p.terms().at(w));
    if (first) out += s.negative ? "-" : "";
    else out += s.negative ? " - " : " + ";
    first = false;
    if (w.is_unit()) {
      out += s.magnitude.empty() ? "1" : s.magnitude;
    } else if (s.magnitude.empty()) {
      out += to_string(w);
    } else {
      out += s.magnitude + (s.grouped ? "*" : " ") + to_string(w);
    }
  }
  return out;
}

}  // namespace

std::string coefficient_text(const Rational& c) { return to_string(c); }
std::string coefficient_text(const MPoly& c) { return to_string(c); }

template <Coefficient C>
std::string to_string(const OpPoly<C>& p, const OrderConfig& ord) {
  return render(p, ord);
}

template std::string to_string(const OpPoly<Rational>&, const OrderConfig&);
template std::string to_string(const OpPoly<MPoly>&, const OrderConfig&);

SymPoly lift(const RatPoly& p) {
  return p.map_coeffs([](const Rational& c) { return MPoly(c); });
}

RatPoly lower(const SymPoly& p) {
  return p.map_coeffs([](const MPoly& c) {
    if (!c.is_constant()) throw MixedCoefficientRings("symbolic coefficient " + to_string(c) + " in a rational polynomial");
    return c.constant_term();
  });
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view s, const GeneratorSet& gens) : s_(s), gens_(gens) {}

  SymPoly parse() {
    SymPoly p = expr();
    ws();
    if (pos_ != s_.size()) {
      if (s_[pos_] == ']') throw ParseError(ParseError::Kind::UnbalancedBrackets, pos_, "unmatched ']'");
      throw ParseError(ParseError::Kind::UnexpectedToken, pos_, "unexpected character");
    }
    return p;
  }

 private:
  void ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool starts_factor() {
    ws();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return std::isalnum(static_cast<unsigned char>(c)) || c == '(' || c == '[';
  }

  SymPoly expr() {
    SymPoly r;
    bool neg = false;
    if (peek('-')) { ++pos_; neg = true; }
    else if (peek('+')) ++pos_;
    SymPoly t = term();
    r = neg ? -t : t;
    while (true) {
      if (peek('+')) { ++pos_; r += term(); }
      else if (peek('-')) { ++pos_; r -= term(); }
      else break;
    }
    return r;
  }

  SymPoly term() {
    SymPoly r = power();
    while (true) {
      if (peek('*')) { ++pos_; r *= power(); continue; }
      if (starts_factor()) { r *= power(); continue; }
      break;
    }
    return r;
  }

  SymPoly power() {
    SymPoly b = factor();
    if (peek('^')) {
      ++pos_;
      ws();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) throw ParseError(ParseError::Kind::UnexpectedToken, pos_, "expected exponent");
      auto n = std::stoul(std::string(s_.substr(start, pos_ - start)));
      SymPoly r = SymPoly::one();
      for (unsigned long i = 0; i < n; ++i) r *= b;
      return r;
    }
    return b;
  }

  SymPoly factor() {
    ws();
    if (pos_ >= s_.size()) throw ParseError(ParseError::Kind::UnexpectedToken, pos_, "unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      SymPoly r = expr();
      if (!peek(')')) throw ParseError(ParseError::Kind::UnexpectedToken, pos_, "expected ')'");
      ++pos_;
      return r;
    }
    if (c == '[') {
      std::size_t open_at = pos_++;
      ws();
      if (peek(']')) throw ParseError(ParseError::Kind::EmptyBracketWithoutUnit, pos_, "empty bracket, write [1]");
      SymPoly r = expr();
      if (pos_ >= s_.size()) throw ParseError(ParseError::Kind::UnbalancedBrackets, open_at, "unclosed '['");
      if (!peek(']')) throw ParseError(ParseError::Kind::UnexpectedToken, pos_, "expected ']'");
      ++pos_;
      return r.bracket();
    }
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/')) ++pos_;
      return SymPoly::scalar(MPoly(parse_rational(s_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string_view name = s_.substr(start, pos_ - start);
      if (gens_.is_open() || gens_.contains(name)) return SymPoly::word(Word::gen(name));
      return SymPoly::scalar(MPoly::var(name));
    }
    throw ParseError(ParseError::Kind::UnexpectedToken, pos_, std::string("unexpected '") + c + "'");
  }

  std::string_view s_;
  const GeneratorSet& gens_;
  std::size_t pos_ = 0;
};

}  // namespace

SymPoly parse_poly(std::string_view text, const GeneratorSet& gens) { return PolyParser(text, gens).parse(); }

}  // namespace opalg
