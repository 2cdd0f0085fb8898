#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>
#include <string>

#include "lawless/perm.hpp"
#include "lawless/words.hpp"
#include "oracles.hpp"

using namespace lawless;

namespace {

Letter L(char c) {
  return c >= 'a' ? Letter{static_cast<std::uint32_t>(c - 'a' + 1), 1}
                  : Letter{static_cast<std::uint32_t>(c - 'A' + 1), -1};
}

std::vector<Letter> letters(const std::string& s) {
  std::vector<Letter> out;
  for (char c : s) out.push_back(L(c));
  return out;
}

std::string random_letters(std::mt19937_64& rng, std::size_t rank, std::size_t len) {
  std::string s;
  for (std::size_t i = 0; i < len; ++i) {
    const auto g = static_cast<char>(rng() % rank);
    s.push_back(static_cast<char>((rng() & 1) ? 'a' + g : 'A' + g));
  }
  return s;
}

}  // namespace

TEST_CASE("parse_word letter form") {
  const Word w = parse_word("abAB");
  CHECK(w.size() == 4);
  CHECK(w.rank() == 2);
  CHECK(to_string(w) == "abAB");
  CHECK(parse_word("aA").empty());
  CHECK(parse_word("").empty());
  CHECK(parse_word("").rank() == 1);
  CHECK(parse_word("c").rank() == 3);
}

TEST_CASE("parse_word reports the offending position") {
  try {
    parse_word("ab7");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() == 3);
  }
  CHECK_THROWS_AS(parse_word("a b"), ParseError);
}

TEST_CASE("parse_word integer form") {
  const Word w = parse_word("1 -2 1");
  CHECK(to_string(w) == "aBa");
  CHECK(parse_word("1, -1").empty());
  const Word big = parse_word("27 -3");
  CHECK(big.rank() == 27);
  CHECK(to_string(big) == "27 -3");
  CHECK(to_string(parse_word(to_string(big))) == "27 -3");
  CHECK_THROWS_AS(parse_word("1 0"), ParseError);
  CHECK_THROWS_AS(parse_word("1 x"), ParseError);
}

TEST_CASE("reduce examples") {
  CHECK(to_string(reduce(letters("abB"))) == "a");
  CHECK(reduce(letters("aAbB")).empty());
  CHECK(reduce(letters("abAB")).size() == 4);
  CHECK(reduce(letters("abBA")).empty());
  CHECK_THROWS_AS(reduce(std::vector<Letter>{Letter{0, 1}}), RangeError);
}

TEST_CASE("concat examples") {
  CHECK(concat(parse_word("ab"), parse_word("BA")).empty());
  CHECK(to_string(concat(parse_word("a"), Word{})) == "a");
  const Word abb = concat(parse_word("ab"), parse_word("b"));
  CHECK(to_string(abb) == "abb");
  CHECK(abb.size() == 3);
  CHECK(concat(parse_word("a"), parse_word("c")).rank() == 3);
}

TEST_CASE("inverse examples") {
  CHECK(to_string(inverse(parse_word("abAB"))) == "baBA");
  CHECK(inverse(Word{}).empty());
  CHECK(to_string(inverse(parse_word("a"))) == "A");
}

TEST_CASE("prefix examples") {
  const Word w = parse_word("abAB");
  CHECK(to_string(prefix(w, 2)) == "ab");
  CHECK(prefix(w, 0).empty());
  CHECK(prefix(w, 4) == w);
  CHECK_THROWS_AS(prefix(w, 5), RangeError);
}

TEST_CASE("enumerate_reduced examples") {
  const auto one = enumerate_reduced(2, 1);
  REQUIRE(one.size() == 4);
  CHECK(to_string(one[0]) == "a");
  CHECK(to_string(one[1]) == "A");
  CHECK(to_string(one[2]) == "b");
  CHECK(to_string(one[3]) == "B");
  CHECK(enumerate_reduced(2, 2).size() == 16);
  const auto f1 = enumerate_reduced(1, 3);
  std::vector<std::string> names;
  for (const auto& w : f1) names.push_back(to_string(w));
  CHECK(names == std::vector<std::string>{"a", "A", "aa", "AA", "aaa", "AAA"});
}

TEST_CASE("enumerate_reduced matches a brute-force filter") {
  for (std::size_t k = 1; k <= 3; ++k) {
    for (std::size_t L = 0; L <= 4; ++L) {
      const auto words = enumerate_reduced(k, L);
      std::size_t expected = 0, layer = 2 * k;
      for (std::size_t l = 1; l <= L; ++l) {
        expected += layer;
        layer *= 2 * k - 1;
      }
      CHECK(words.size() == expected);
      std::set<std::string> ours;
      for (const auto& w : words) {
        ours.insert(to_string(w));
        CHECK(w.rank() == k);
      }
      CHECK(ours.size() == words.size());
      const auto brute = oracle::reduced_words(k, L);
      CHECK(std::set<std::string>(brute.begin(), brute.end()) == ours);
      for (std::size_t i = 0; i + 1 < words.size(); ++i) CHECK(words[i].size() <= words[i + 1].size());
    }
  }
}

TEST_CASE("evaluate examples") {
  const std::vector<Permutation> tuple{Permutation::from_images({2, 3, 1}), Permutation::from_images({2, 1, 3})};
  auto mul = [](const Permutation& a, const Permutation& b) { return compose(a, b); };
  auto inv = [](const Permutation& a) { return inverse(a); };
  const auto id = Permutation::identity(3);
  CHECK(evaluate(Word{}, tuple, id, mul, inv) == id);
  CHECK(evaluate(parse_word("ab"), tuple, id, mul, inv) == Permutation::from_images({1, 3, 2}));
  CHECK(evaluate(parse_word("aA"), tuple, id, mul, inv) == id);
  CHECK_THROWS_AS(evaluate(parse_word("abc"), tuple, id, mul, inv), ArityError);
}

TEST_CASE("word properties on random inputs") {
  std::mt19937_64 rng(20240611);
  auto mul = [](const Permutation& a, const Permutation& b) { return compose(a, b); };
  auto inv = [](const Permutation& a) { return inverse(a); };
  for (int iter = 0; iter < 300; ++iter) {
    const auto s = random_letters(rng, 3, rng() % 12);
    const Word r = reduce(letters(s));
    CHECK(reduce(r.letters()) == r);
    CHECK(r.size() <= s.size());

    const Word u = parse_word(random_letters(rng, 3, rng() % 6));
    const Word v = parse_word(random_letters(rng, 3, rng() % 6));
    const Word w = parse_word(random_letters(rng, 3, rng() % 6));
    CHECK(concat(concat(u, v), w) == concat(u, concat(v, w)));
    CHECK(concat(u, Word{}) == u);
    CHECK(concat(Word{}, u) == u);
    CHECK(inverse(inverse(u)) == u);
    CHECK(concat(u, inverse(u)).empty());

    // Homomorphism, against point-by-point application.
    std::vector<Permutation> tuple;
    std::vector<oracle::Images> raw;
    for (int i = 0; i < 3; ++i) {
      std::vector<std::uint32_t> img{0, 1, 2, 3, 4};
      std::shuffle(img.begin(), img.end(), rng);
      raw.push_back(img);
      tuple.push_back(Permutation::from_zero_based(img));
    }
    const auto id = Permutation::identity(5);
    const Permutation uv = evaluate(concat(u, v), tuple, id, mul, inv);
    CHECK(uv == compose(evaluate(u, tuple, id, mul, inv), evaluate(v, tuple, id, mul, inv)));
    const Permutation wu = evaluate(u, tuple, id, mul, inv);
    for (std::uint32_t x = 0; x < 5; ++x) CHECK(wu[x] == oracle::apply_word(to_string(u), raw, x));
  }
}
