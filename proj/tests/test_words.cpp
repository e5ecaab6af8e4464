#include <catch_amalgamated.hpp>

#include <random>

#include "crossmod/word.hpp"
#include "oracles.hpp"

using namespace crossmod;

namespace {

AlphabetPtr xy() { return make_alphabet({"x", "y"}); }

Word random_word(std::mt19937_64& rng, const AlphabetPtr& a, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> gen(0, a->size() - 1);
  std::uniform_int_distribution<int> sgn(0, 1);
  std::vector<Letter> ls;
  int n = len(rng);
  for (int i = 0; i < n; ++i) ls.push_back({gen(rng), sgn(rng) ? 1 : -1});
  return Word(a, ls);
}

bool is_reduced(const Word& w) {
  const auto& ls = w.letters();
  for (std::size_t i = 0; i + 1 < ls.size(); ++i)
    if (ls[i].gen == ls[i + 1].gen && ls[i].sign == -ls[i + 1].sign) return false;
  return true;
}

}  // namespace

TEST_CASE("alphabet validation") {
  CHECK_THROWS_AS(Alphabet({}), InputError);
  CHECK_THROWS_AS(Alphabet({"x", "x"}), InputError);
  CHECK_THROWS_AS(Alphabet({"2x"}), InputError);
  CHECK_THROWS_AS(Alphabet({"x y"}), InputError);
  CHECK(Alphabet({"x", "y2", "t"}).size() == 3);
}

TEST_CASE("word parsing and formatting") {
  auto a = xy();
  CHECK(Word::parse(a, "x*y*x*y").size() == 4);
  CHECK(Word::parse(a, "x^3").str() == "x^3");
  CHECK(Word::parse(a, "x^-1*y").str() == "x^-1*y");
  CHECK(Word::parse(a, "1").empty());
  CHECK(Word::parse(a, "").empty());
  CHECK(Word::parse(a, " x * y ^ 2 ") == Word::parse(a, "x*y^2"));
  CHECK(Word::parse(a, "x*x^-1").empty());
  CHECK_THROWS_AS(Word::parse(a, "z"), InputError);
  CHECK_THROWS_AS(Word::parse(a, "x**y"), InputError);
  CHECK_THROWS_AS(Word::parse(a, "x^"), InputError);
  CHECK_THROWS_AS(Word::parse(a, "x*"), InputError);
}

TEST_CASE("multiply reduces freely") {
  auto a = xy();
  // x*x^-1 * empty -> empty
  CHECK(multiply(Word::parse(a, "x*x^-1"), Word::identity(a)).empty());
  // (x*y)(y^-1*x) -> x*x
  CHECK(multiply(Word::parse(a, "x*y"), Word::parse(a, "y^-1*x")) ==
        Word::parse(a, "x^2"));
  // x^3 * x^-1 -> x^2, expected value from the scan-reduction oracle
  auto concat = std::vector<Letter>{{0, 1}, {0, 1}, {0, 1}, {0, -1}};
  CHECK(Word(a, oracles::scan_reduce(concat)) ==
        multiply(Word::parse(a, "x^3"), Word::parse(a, "x^-1")));

  auto b = make_alphabet({"a"});
  CHECK_THROWS_AS(multiply(Word::parse(a, "x"), Word::parse(b, "a")), InputError);
}

TEST_CASE("conjugation") {
  auto a = xy();
  Word w = Word::parse(a, "x*y^-1");
  CHECK(conjugate(Word::identity(a), w) == w);
  CHECK(conjugate(Word::parse(a, "y"), Word::parse(a, "y^2")) == Word::parse(a, "y^2"));
  // conjugator appearing in the S3 identity: (x^-1*y) acting on r = x^3
  std::vector<Letter> raw;
  for (auto l : Word::parse(a, "x^-1*y").letters()) raw.push_back(l);
  for (auto l : Word::parse(a, "x^3").letters()) raw.push_back(l);
  for (auto l : Word::parse(a, "x^-1*y").inverse().letters()) raw.push_back(l);
  CHECK(conjugate(Word::parse(a, "x^-1*y"), Word::parse(a, "x^3")) ==
        Word(a, oracles::scan_reduce(raw)));
}

TEST_CASE("free group laws on random words") {
  auto a = xy();
  std::mt19937_64 rng(20240811);
  for (int trial = 0; trial < 300; ++trial) {
    Word u = random_word(rng, a, 10), v = random_word(rng, a, 10),
         w = random_word(rng, a, 10);
    CHECK(multiply(multiply(u, v), w) == multiply(u, multiply(v, w)));
    CHECK(multiply(u, Word::identity(a)) == u);
    CHECK(multiply(Word::identity(a), u) == u);
    CHECK(is_reduced(multiply(u, v)));
    CHECK(conjugate(u, conjugate(v, w)) == conjugate(multiply(u, v), w));
  }
}

TEST_CASE("w * w^-1 reduces to identity, exhaustive up to length 8") {
  auto a = xy();
  // all sign-tagged sequences over {x, x^-1, y, y^-1} of length <= 8
  for (int len = 0; len <= 8; ++len) {
    long count = 1;
    for (int i = 0; i < len; ++i) count *= 4;
    for (long code = 0; code < count; ++code) {
      long c = code;
      std::vector<Letter> ls;
      for (int i = 0; i < len; ++i) {
        ls.push_back({static_cast<int>(c % 4) / 2, (c % 2) ? -1 : 1});
        c /= 4;
      }
      Word w(a, ls);
      REQUIRE(multiply(w, w.inverse()).empty());
      REQUIRE(is_reduced(w));
    }
  }
}

TEST_CASE("powers") {
  auto a = xy();
  CHECK(Word::parse(a, "x").pow(3) == Word::parse(a, "x^3"));
  CHECK(Word::parse(a, "x*y").pow(-2) == Word::parse(a, "y^-1*x^-1*y^-1*x^-1"));
  CHECK(Word::parse(a, "x").pow(0).empty());
}
