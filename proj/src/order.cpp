#include "opalg/order.hpp"

#include <algorithm>
#include <limits>

#include <gmpxx.h>

namespace opalg {

namespace {

using Tokens = std::span<const Word::Token>;

struct Atom {
  Tokens tok;
  std::size_t deg;
  bool bracket() const { return tok.front() == Word::kOpen; }
  Tokens inner() const { return tok.subspan(1, tok.size() - 2); }
};

std::vector<Atom> split_atoms(Tokens t) {
  std::vector<Atom> out;
  std::size_t start = 0, deg = 0;
  int level = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    Word::Token x = t[i];
    if (x == Word::kOpen) {
      if (level == 0) { start = i; deg = 0; }
      ++level;
    } else if (x == Word::kClose) {
      if (--level == 0) out.push_back({t.subspan(start, i - start + 1), deg});
    } else if (level == 0) {
      out.push_back({t.subspan(i, 1), x >= 0 ? 1u : 0u});
    } else if (x >= 0) {
      ++deg;
    }
  }
  return out;
}

std::size_t total_deg(const std::vector<Atom>& atoms) {
  std::size_t d = 0;
  for (const auto& a : atoms) d += a.deg;
  return d;
}

// Generators weigh 1, concatenation adds, a bracket maps t to (t + 2)^2.
// Strictly monotone in every position, and superadditive under brackets.
mpz_class weight(Tokens t) {
  mpz_class w = 0;
  for (const auto& a : split_atoms(t)) {
    if (!a.bracket()) {
      w += a.deg;
      continue;
    }
    mpz_class in = weight(a.inner()) + 2;
    w += in * in;
  }
  return w;
}

class Comparator {
 public:
  explicit Comparator(const OrderConfig& cfg) : cfg_(cfg) {}

  std::strong_ordering words(Tokens u, Tokens v) const {
    auto au = split_atoms(u);
    auto av = split_atoms(v);
    switch (cfg_.word_comparison) {
      case WordComparison::PureLex:
        return lex(au, av);
      case WordComparison::DegLenLex: {
        if (auto c = total_deg(au) <=> total_deg(av); c != 0) return c;
        if (auto c = au.size() <=> av.size(); c != 0) return c;
        return lex(au, av);
      }
      case WordComparison::Skeleton:
      default: {
        if (auto c = total_deg(au) <=> total_deg(av); c != 0) return c;
        std::vector<Atom> su, sv;
        for (const auto& a : au) if (a.deg > 0) su.push_back(a);
        for (const auto& a : av) if (a.deg > 0) sv.push_back(a);
        if (auto c = lex(su, sv); c != 0) return c;
        if (int c = cmp(weight(u), weight(v)); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
        if (auto c = au.size() <=> av.size(); c != 0) return c;
        return lex(au, av);
      }
    }
  }

 private:
  std::strong_ordering lex(const std::vector<Atom>& a, const std::vector<Atom>& b) const {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
      if (auto c = atoms(a[i], b[i]); c != 0) return c;
    return a.size() <=> b.size();
  }

  std::strong_ordering atoms(const Atom& a, const Atom& b) const {
    if (auto c = a.deg <=> b.deg; c != 0) return c;
    bool ab = a.bracket(), bb = b.bracket();
    if (ab != bb) return ab ? std::strong_ordering::greater : std::strong_ordering::less;
    if (!ab) return cfg_.rank(a.tok[0]) <=> cfg_.rank(b.tok[0]);
    return words(a.inner(), b.inner());
  }

  const OrderConfig& cfg_;
};

}  // namespace

OrderConfig OrderConfig::with_generators(const GeneratorSet& gens, WordComparison mode) {
  OrderConfig c;
  c.generator_rank = gens.generators();
  c.word_comparison = mode;
  return c;
}

std::int64_t OrderConfig::rank(std::int32_t generator_id) const {
  for (std::size_t i = 0; i < generator_rank.size(); ++i)
    if (generator_rank[i].id() == generator_id) return static_cast<std::int64_t>(i);
  // Undeclared generators (and placeholders) rank above declared ones, by id.
  return static_cast<std::int64_t>(generator_rank.size()) + 16 + generator_id;
}

std::strong_ordering compare(const Word& u, const Word& v, const OrderConfig& cfg) {
  if (u == v) return std::strong_ordering::equal;
  return Comparator(cfg).words(u.tokens(), v.tokens());
}

std::optional<WordComparison> parse_word_comparison(const std::string& s) {
  if (s == "skeleton") return WordComparison::Skeleton;
  if (s == "purelex") return WordComparison::PureLex;
  if (s == "deglenlex") return WordComparison::DegLenLex;
  return std::nullopt;
}

std::string to_string(WordComparison m) {
  switch (m) {
    case WordComparison::PureLex: return "purelex";
    case WordComparison::DegLenLex: return "deglenlex";
    default: return "skeleton";
  }
}

Word WordSampler::word(std::mt19937_64& rng, std::size_t depth_left, bool allow_unit) const {
  std::uniform_int_distribution<std::size_t> len(allow_unit ? 0 : 1, max_breadth);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  std::bernoulli_distribution br(bracket_prob);
  std::size_t n = len(rng);
  Word w;
  for (std::size_t i = 0; i < n; ++i) {
    if (depth_left > 0 && br(rng)) {
      // inner words are kept shorter so samples stay small
      WordSampler inner = *this;
      inner.max_breadth = std::max<std::size_t>(1, max_breadth / 2);
      w *= Word::bracket(inner.word(rng, depth_left - 1, true));
    } else {
      w *= Word::gen(gens[pick(rng)]);
    }
  }
  return w;
}

StarWord WordSampler::context(std::mt19937_64& rng) const {
  // Build a word, then replace a uniformly chosen position (atom slot or bracket interior)
  Word w = word(rng, max_depth, true);
  auto t = w.tokens();
  std::vector<std::size_t> slots;
  for (std::size_t i = 0; i <= t.size(); ++i) slots.push_back(i);
  std::uniform_int_distribution<std::size_t> pick(0, slots.size() - 1);
  std::size_t at = slots[pick(rng)];
  std::vector<Word::Token> out(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(at));
  out.push_back(Word::kStar);
  out.insert(out.end(), t.begin() + static_cast<std::ptrdiff_t>(at), t.end());
  return StarWord(Word::from_tokens(std::move(out)));
}

PropertyReport check_monomial_order(const OrderConfig& cfg, const WordSampler& sampler,
                                    std::size_t samples, std::uint64_t seed) {
  PropertyReport rep;
  std::mt19937_64 rng(seed);
  auto record = [&](std::string kind, const std::string& q, const Word& u, const Word& v) {
    ++rep.violation_count;
    if (rep.violations.size() < 32) rep.violations.push_back({std::move(kind), q, to_string(u), to_string(v)});
  };
  for (std::size_t i = 0; i < samples; ++i) {
    ++rep.samples;
    Word u = sampler.word(rng, sampler.max_depth);
    Word v = sampler.word(rng, sampler.max_depth);
    Word x = sampler.word(rng, sampler.max_depth);
    StarWord q = sampler.context(rng);
    auto c = compare(u, v, cfg);
    if (compare(v, u, cfg) != (0 <=> c)) record("antisymmetry", "", u, v);
    if ((c == 0) != (u == v)) record("antisymmetry", "", u, v);
    if (!u.is_unit() && compare(Word::unit(), u, cfg) != std::strong_ordering::less)
      record("unit", "", Word::unit(), u);
    if (c != 0) {
      const Word& lo = c < 0 ? u : v;
      const Word& hi = c < 0 ? v : u;
      if (!word_less(substitute(q, lo), substitute(q, hi), cfg)) record("monotonicity", to_string(q.word()), lo, hi);
    }
    if (word_less(u, v, cfg) && word_less(v, x, cfg) && !word_less(u, x, cfg)) record("transitivity", to_string(x), u, v);
  }
  return rep;
}

}  // namespace opalg
