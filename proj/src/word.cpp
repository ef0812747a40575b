#include "opalg/word.hpp"

#include <algorithm>
#include <cctype>

namespace opalg {

Word Word::bracket(const Word& inner) {
  std::vector<Token> t;
  t.reserve(inner.tok_.size() + 2);
  t.push_back(kOpen);
  t.insert(t.end(), inner.tok_.begin(), inner.tok_.end());
  t.push_back(kClose);
  return Word(std::move(t));
}

std::size_t Word::breadth() const {
  std::size_t n = 0;
  int level = 0;
  for (Token t : tok_) {
    if (t == kOpen) {
      if (level == 0) ++n;
      ++level;
    } else if (t == kClose) {
      --level;
    } else if (level == 0) {
      ++n;
    }
  }
  return n;
}

std::size_t Word::depth() const {
  int level = 0, best = 0;
  for (Token t : tok_) {
    if (t == kOpen) best = std::max(best, ++level);
    else if (t == kClose) --level;
  }
  return static_cast<std::size_t>(best);
}

std::size_t Word::deg() const {
  return static_cast<std::size_t>(std::count_if(tok_.begin(), tok_.end(), [](Token t) { return t >= 0; }));
}

std::size_t Word::count(Token t) const {
  return static_cast<std::size_t>(std::count(tok_.begin(), tok_.end(), t));
}

std::vector<Word> Word::atoms() const {
  std::vector<Word> out;
  std::size_t start = 0;
  int level = 0;
  for (std::size_t i = 0; i < tok_.size(); ++i) {
    Token t = tok_[i];
    if (t == kOpen) {
      if (level == 0) start = i;
      ++level;
    } else if (t == kClose) {
      if (--level == 0) out.push_back(Word(std::vector<Token>(tok_.begin() + start, tok_.begin() + i + 1)));
    } else if (level == 0) {
      out.push_back(Word(std::vector<Token>{t}));
    }
  }
  return out;
}

bool Word::is_atom() const { return breadth() == 1; }

bool Word::is_bracket_atom() const { return !tok_.empty() && tok_.front() == kOpen && breadth() == 1; }

Word Word::inner() const {
  if (!is_bracket_atom()) throw std::logic_error("inner() of a non-bracket word");
  return Word(std::vector<Token>(tok_.begin() + 1, tok_.end() - 1));
}

Word Word::operator*(const Word& rhs) const {
  Word r = *this;
  r *= rhs;
  return r;
}

Word& Word::operator*=(const Word& rhs) {
  tok_.insert(tok_.end(), rhs.tok_.begin(), rhs.tok_.end());
  return *this;
}

Word Word::replace(Token placeholder, const Word& w) const {
  std::vector<Token> t;
  t.reserve(tok_.size() + w.tok_.size());
  for (Token x : tok_) {
    if (x == placeholder) t.insert(t.end(), w.tok_.begin(), w.tok_.end());
    else t.push_back(x);
  }
  return Word(std::move(t));
}

Word Word::replace(std::span<const std::pair<Token, Word>> subs) const {
  std::vector<Token> t;
  t.reserve(tok_.size() * 2);
  for (Token x : tok_) {
    auto it = std::find_if(subs.begin(), subs.end(), [x](const auto& s) { return s.first == x; });
    if (it == subs.end()) t.push_back(x);
    else t.insert(t.end(), it->second.tok_.begin(), it->second.tok_.end());
  }
  return Word(std::move(t));
}

std::size_t Word::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (Token t : tok_) {
    h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(t));
    h *= 1099511628211ull;
  }
  return h;
}

std::string to_string(const Word& w) {
  if (w.is_unit()) return "1";
  std::string out;
  bool need_space = false;
  auto tok = w.tokens();
  for (std::size_t i = 0; i < tok.size(); ++i) {
    Word::Token t = tok[i];
    if (t == Word::kClose) {
      // a bracket of the unit prints as [1]
      if (i > 0 && tok[i - 1] == Word::kOpen) out += "1";
      out += "]";
      need_space = true;
      continue;
    }
    if (need_space) out += " ";
    switch (t) {
      case Word::kOpen: out += "["; need_space = false; continue;
      case Word::kStar: out += "⋆"; break;
      case Word::kStar1: out += "⋆1"; break;
      case Word::kStar2: out += "⋆2"; break;
      default: out += generator_symbols().name(t); break;
    }
    need_space = true;
  }
  return out;
}

namespace {

class WordParser {
 public:
  WordParser(std::string_view s, const GeneratorSet& gens, bool placeholders)
      : s_(s), gens_(gens), placeholders_(placeholders) {}

  Word parse() {
    std::vector<Word::Token> out;
    parse_word(out, /*nested=*/false);
    skip_ws();
    if (pos_ != s_.size()) {
      if (s_[pos_] == ']')
        throw ParseError(ParseError::Kind::UnbalancedBrackets, pos_, "unmatched ']'");
      throw ParseError(ParseError::Kind::UnexpectedToken, pos_, "unexpected character");
    }
    return Word::from_tokens(std::move(out));
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && (std::isspace(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '*')) ++pos_;
  }

  bool at_end() const { return pos_ >= s_.size(); }

  // word := "1" | atom+
  void parse_word(std::vector<Word::Token>& out, bool nested) {
    skip_ws();
    std::size_t start = pos_;
    if (!at_end() && s_[pos_] == '1' && (pos_ + 1 == s_.size() || !std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])))) {
      ++pos_;
      skip_ws();
      if (!at_end() && s_[pos_] != ']')
        throw ParseError(ParseError::Kind::UnexpectedToken, pos_, "the unit must stand alone");
      return;
    }
    std::size_t n = 0;
    while (true) {
      skip_ws();
      if (at_end() || s_[pos_] == ']') break;
      parse_atom(out);
      ++n;
    }
    if (n == 0) {
      if (nested)
        throw ParseError(ParseError::Kind::EmptyBracketWithoutUnit, start, "empty bracket, write [1]");
      throw ParseError(ParseError::Kind::UnexpectedToken, start, "empty word, write 1");
    }
  }

  void parse_atom(std::vector<Word::Token>& out) {
    char c = s_[pos_];
    if (c == '[') {
      std::size_t open_at = pos_++;
      out.push_back(Word::kOpen);
      parse_word(out, /*nested=*/true);
      skip_ws();
      if (at_end()) throw ParseError(ParseError::Kind::UnbalancedBrackets, open_at, "unclosed '['");
      ++pos_;
      out.push_back(Word::kClose);
      return;
    }
    if (placeholders_) {
      if (auto t = placeholder()) {
        out.push_back(*t);
        return;
      }
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string_view name = s_.substr(start, pos_ - start);
      if (!gens_.is_open() && !gens_.contains(name))
        throw ParseError(ParseError::Kind::UnknownGenerator, start, "unknown generator '" + std::string(name) + "'");
      out.push_back(Generator(name).id());
      return;
    }
    if (c == '1') throw ParseError(ParseError::Kind::UnexpectedToken, pos_, "the unit must stand alone");
    throw ParseError(ParseError::Kind::UnexpectedToken, pos_, std::string("unexpected '") + c + "'");
  }

  std::optional<Word::Token> placeholder() {
    std::string_view rest = s_.substr(pos_);
    std::size_t len = 0;
    if (rest.starts_with("⋆")) len = std::string_view("⋆").size();
    else if (rest.starts_with("@")) len = 1;
    if (len == 0) return std::nullopt;
    pos_ += len;
    if (pos_ < s_.size() && s_[pos_] == '1') { ++pos_; return Word::kStar1; }
    if (pos_ < s_.size() && s_[pos_] == '2') { ++pos_; return Word::kStar2; }
    return Word::kStar;
  }

  std::string_view s_;
  const GeneratorSet& gens_;
  bool placeholders_;
  std::size_t pos_ = 0;
};

}  // namespace

Word parse_word(std::string_view text, const GeneratorSet& gens, bool allow_placeholders) {
  return WordParser(text, gens, allow_placeholders).parse();
}

StarWord::StarWord(Word w) : w_(std::move(w)) {
  if (w_.count(Word::kStar) != 1 || w_.count(Word::kStar1) != 0 || w_.count(Word::kStar2) != 0)
    throw std::invalid_argument("not a star word: " + to_string(w_));
}

std::size_t StarWord::position() const {
  auto t = w_.tokens();
  return static_cast<std::size_t>(std::find(t.begin(), t.end(), Word::kStar) - t.begin());
}

TwoStarWord::TwoStarWord(Word w) : w_(std::move(w)) {
  if (w_.count(Word::kStar1) != 1 || w_.count(Word::kStar2) != 1 || w_.count(Word::kStar) != 0)
    throw std::invalid_argument("not a two-star word: " + to_string(w_));
}

Word TwoStarWord::first_as_star() const { return w_.replace(Word::kStar1, Word::star()); }
Word TwoStarWord::second_as_star() const { return w_.replace(Word::kStar2, Word::star()); }

Word substitute(const StarWord& q, const Word& u) { return q.word().replace(Word::kStar, u); }

Word substitute2(const TwoStarWord& q, const Word& u1, const Word& u2) {
  return q.word().replace(Word::kStar1, u1).replace(Word::kStar2, u2);
}

StarWord compose(const StarWord& q1, const StarWord& q2) {
  return StarWord(q1.word().replace(Word::kStar, q2.word()));
}

std::vector<StarWord> occurrences(const Word& w, const Word& pattern) {
  if (pattern.is_unit()) throw std::invalid_argument("occurrences of the unit are not defined");
  std::vector<StarWord> out;
  auto t = w.tokens();
  auto p = pattern.tokens();
  if (p.size() > t.size()) return out;
  for (std::size_t i = 0; i + p.size() <= t.size(); ++i) {
    if (!std::equal(p.begin(), p.end(), t.begin() + static_cast<std::ptrdiff_t>(i))) continue;
    std::vector<Word::Token> ctx(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(i));
    ctx.push_back(Word::kStar);
    ctx.insert(ctx.end(), t.begin() + static_cast<std::ptrdiff_t>(i + p.size()), t.end());
    out.emplace_back(Word::from_tokens(std::move(ctx)));
  }
  return out;
}

Location classify_pair(const Word& w, const StarWord& q1, const StarWord& q2, const Word& u1,
                       const Word& u2) {
  if (substitute(q1, u1) != w || substitute(q2, u2) != w)
    throw PreconditionViolated("contexts do not reproduce the word");
  std::size_t a0 = q1.position(), a1 = a0 + u1.size();
  std::size_t b0 = q2.position(), b1 = b0 + u2.size();
  if (a1 <= b0 || b1 <= a0) return Location::Separated;
  if ((a0 <= b0 && b1 <= a1) || (b0 <= a0 && a1 <= b1)) return Location::Nested;
  return Location::Overlapping;
}

StarWord context_of_atoms(const Word& w, std::size_t first, std::size_t last) {
  auto atoms = w.atoms();
  Word out;
  for (std::size_t i = 0; i < first; ++i) out *= atoms[i];
  out *= Word::star();
  for (std::size_t i = last; i < atoms.size(); ++i) out *= atoms[i];
  return StarWord(std::move(out));
}

}  // namespace opalg
