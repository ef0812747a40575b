#include <doctest.h>

#include <random>
#include <set>

#include "opalg/gsb.hpp"

using namespace opalg;

namespace {

const GeneratorSet kOpen = GeneratorSet::open();

Word w(const char* s) { return parse_word(s, kOpen); }

}  // namespace

TEST_CASE("bracket of a product is above the derivation terms") {
  CHECK(compare(w("[x y]"), w("x [y]")) == std::strong_ordering::greater);
  CHECK(compare(w("[x y]"), w("[x] y")) == std::strong_ordering::greater);
  CHECK(compare(w("[x y]"), w("[x] [y]")) == std::strong_ordering::greater);
  CHECK(word_less(w("x"), w("[x]")));
  CHECK(word_less(Word::unit(), w("x")));
  CHECK(word_less(Word::unit(), w("[1]")));
}

TEST_CASE("generator-free brackets of products are leading") {
  for (const char* m : {"[1] [1]", "[[1]] [[1]]", "[1] [1] [1]", "[1] [1] [1] [1] [1] [1]", "[[1]] [1]"})
    CHECK_MESSAGE(compare(w("[[1] [1]]"), w(m)) == std::strong_ordering::greater, m);
  CHECK(compare(w("x [[1] [1]]"), w("x [1] [1]")) == std::strong_ordering::greater);
  CHECK(compare(w("[[1] x]"), w("[1] [x]")) == std::strong_ordering::greater);
}

TEST_CASE("monomial-order laws on bracket-heavy words") {
  WordSampler ws{{Generator("x")}, 4, 4, 0.85};
  PropertyReport r = check_monomial_order(OrderConfig{}, ws, 5000, 18);
  CHECK(r.ok());
}

TEST_CASE("monomial-order laws") {
  WordSampler ws{{Generator("x"), Generator("y"), Generator("z")}, 4, 3};
  for (auto mode : {WordComparison::Skeleton, WordComparison::DegLenLex}) {
    OrderConfig cfg{{}, mode};
    PropertyReport r = check_monomial_order(cfg, ws, 3000, 17);
    CHECK(r.samples == 3000);
    CHECK_MESSAGE(r.ok(), to_string(mode));
  }
}

TEST_CASE("the plain lexicographic order is not monotone") {
  OrderConfig lex{{}, WordComparison::PureLex};
  CHECK(word_less(w("x"), w("x y"), lex));
  // right-multiplying by z reverses the pair when z > y
  OrderConfig ranked = OrderConfig::with_generators(GeneratorSet({"x", "y", "z"}), WordComparison::PureLex);
  CHECK(word_less(w("x"), w("x y"), ranked));
  CHECK(word_less(w("x y z"), w("x z"), ranked));
  WordSampler ws{{Generator("x"), Generator("y"), Generator("z")}, 4, 3};
  CHECK(!check_monomial_order(ranked, ws, 3000, 17).ok());
}

TEST_CASE("total order without ties on reduced words") {
  TruncationBound b;
  b.max_breadth = 3;
  b.max_depth = 2;
  b.max_degree = 3;
  std::vector<Word> drf;
  for (const Word& u : enumerate_words({Generator("x"), Generator("y")}, b))
    if (is_drf(u)) drf.push_back(u);
  std::sort(drf.begin(), drf.end(), [](const Word& a, const Word& c) { return word_less(a, c); });
  for (std::size_t i = 1; i < drf.size(); ++i) CHECK(word_less(drf[i - 1], drf[i]));
}

TEST_CASE("generator rank follows declaration order") {
  OrderConfig cfg = OrderConfig::with_generators(GeneratorSet({"z", "a"}));
  CHECK(word_less(w("z"), w("a"), cfg));
  CHECK(word_less(w("a"), w("z"), OrderConfig::with_generators(GeneratorSet({"a", "z"}))));
  CHECK(parse_word_comparison("purelex") == WordComparison::PureLex);
  CHECK(!parse_word_comparison("nope"));
}
