#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <string>
#include <vector>

#include "lawless/json_io.hpp"
#include "lawless/random.hpp"
#include "lawless/trees.hpp"
#include "oracles.hpp"

using namespace lawless;

namespace {

VertexString vs(const std::string& s, std::size_t d = 2) { return parse_vertex(s, d); }

// The recursion a = swap, b = (a, c), c = (a, d), d = (1, b) unfolded by hand.
std::string grig(char g, const std::string& s) {
  if (s.empty() || g == 'e') return s;
  const std::string rest = s.substr(1);
  switch (g) {
    case 'a': return std::string(1, s[0] == '0' ? '1' : '0') + rest;
    case 'b': return s[0] == '0' ? "0" + grig('a', rest) : "1" + grig('c', rest);
    case 'c': return s[0] == '0' ? "0" + grig('a', rest) : "1" + grig('d', rest);
    case 'd': return s[0] == '0' ? s : "1" + grig('b', rest);
  }
  return s;
}

std::vector<VertexString> all_strings(std::size_t d, std::size_t max_len) {
  std::vector<VertexString> out{VertexString{d, {}}};
  std::vector<VertexString> layer = out;
  for (std::size_t l = 1; l <= max_len; ++l) {
    std::vector<VertexString> next;
    for (const auto& v : layer) {
      for (std::size_t x = 0; x < d; ++x) {
        auto c = v;
        c.letters.push_back(static_cast<std::uint8_t>(x));
        next.push_back(c);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

Portrait root_swap(std::size_t depth) {
  Portrait p = Portrait::identity(2, depth);
  p.set_label(VertexString{2, {}}, Permutation::from_images({2, 1}));
  return p;
}

bool same_action(const Portrait& f, const Portrait& g) {
  for (const auto& s : all_strings(f.arity(), f.depth())) {
    if (!(act(f, s) == act(g, s))) return false;
  }
  return true;
}

// Index of a d=2 portrait among all 2^(2^D - 1) by its labels in vertex order.
std::size_t code(const Portrait& p) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < p.internal_count(); ++i) c = c * 2 + (p.label(i)[0] == 1 ? 1 : 0);
  return c;
}

}  // namespace

TEST_CASE("vertex strings") {
  CHECK(to_string(vs("0110")) == "0110");
  CHECK(vs("").is_root());
  CHECK(vs("01").starts_with(vs("0")));
  CHECK_FALSE(vs("01").starts_with(vs("1")));
  CHECK_THROWS_AS(parse_vertex("012", 2), ParseError);
  CHECK(parse_vertex("012", 3).size() == 3);
}

TEST_CASE("act_on_string examples") {
  CHECK(to_string(act(root_swap(2), vs("00"))) == "10");
  const auto id = Portrait::identity(2, 3);
  for (const auto& s : all_strings(2, 3)) CHECK(act(id, s) == s);
  CHECK_THROWS_AS(act(id, vs("0000")), DepthError);
  const auto b = grigorchuk_generator("b");
  CHECK(to_string(act(b, vs("00000"))) == "01000");
  CHECK(to_string(act(b, vs("00000"))) == grig('b', "00000"));
}

TEST_CASE("compose_aut examples") {
  CHECK(compose(root_swap(3), root_swap(3)).is_identity());
  auto rng = substream(4, 0);
  const auto f = haar_sample(2, 3, rng);
  CHECK(compose(f, Portrait::identity(2, 3)) == f);
  CHECK_THROWS_AS(compose(f, Portrait::identity(2, 4)), ShapeError);
  const auto g = haar_sample(2, 3, rng);
  const auto fg = compose(f, g);
  const auto strings = all_strings(2, 3);
  CHECK(strings.size() == 15);
  std::size_t checked = 0;
  for (const auto& s : strings) {
    if (s.is_root()) continue;
    CHECK(act(fg, s) == act(g, act(f, s)));
    ++checked;
  }
  CHECK(checked == 14);
}

TEST_CASE("compose_aut satisfies the action law exhaustively up to depth 4") {
  for (std::size_t depth = 1; depth <= 4; ++depth) {
    for (std::uint64_t i = 0; i < 50; ++i) {
      auto rng = substream(depth, i);
      const auto f = haar_sample(2, depth, rng), g = haar_sample(2, depth, rng);
      const auto fg = compose(f, g);
      for (const auto& s : all_strings(2, depth)) CHECK(act(fg, s) == act(g, act(f, s)));
      CHECK(compose(f, inverse(f)).is_identity());
    }
  }
  auto rng = substream(77, 0);
  const auto f = haar_sample(3, 3, rng), g = haar_sample(3, 3, rng);
  for (const auto& s : all_strings(3, 3)) CHECK(act(compose(f, g), s) == act(g, act(f, s)));
}

TEST_CASE("level_permutation agrees with the action on leaves") {
  auto rng = substream(5, 0);
  const auto p = haar_sample(3, 3, rng);
  const auto perm = p.level_permutation();
  const auto leaves = all_strings(3, 3);
  for (const auto& s : leaves) {
    if (s.size() != 3) continue;
    const auto pos = detail::level_position(s);
    CHECK(perm[pos] == detail::level_position(act(p, s)));
  }
}

TEST_CASE("haar_sample examples") {
  std::uint64_t ids = 0;
  for (std::uint64_t i = 0; i < 10'000; ++i) {
    auto rng = substream(6, i);
    if (haar_sample(2, 1, rng).is_identity()) ++ids;
  }
  CHECK(std::abs(static_cast<double>(ids) / 10'000 - 0.5) < 0.0195);

  std::map<Permutation, std::uint64_t> roots;
  for (std::uint64_t i = 0; i < 60'000; ++i) {
    auto rng = substream(7, i);
    ++roots[haar_sample(3, 1, rng).label_permutation(VertexString{3, {}})];
  }
  CHECK(roots.size() == 6);
  std::vector<std::uint64_t> counts;
  for (const auto& [p, c] : roots) counts.push_back(c);
  CHECK(oracle::chi_square_uniform(counts) < oracle::chi_square_critical(5, 0.01));
}

TEST_CASE("haar_sample is uniform and translation invariant at d=2, D=2") {
  auto trng = substream(8, 999);
  const auto t = haar_sample(2, 2, trng);
  std::vector<std::uint64_t> plain(8, 0), left(8, 0), right(8, 0);
  for (std::uint64_t i = 0; i < 100'000; ++i) {
    auto rng = substream(8, i);
    const auto s = haar_sample(2, 2, rng);
    ++plain[code(s)];
    ++left[code(compose(t, s))];
    ++right[code(compose(s, t))];
  }
  const double crit = oracle::chi_square_critical(7, 0.01);
  CHECK(oracle::chi_square_uniform(plain) < crit);
  CHECK(oracle::chi_square_uniform(left) < crit);
  CHECK(oracle::chi_square_uniform(right) < crit);
}

TEST_CASE("haar_sample with cyclic labels") {
  auto rng = substream(9, 0);
  const auto p = haar_sample(3, 4, rng, LabelGroup::cyclic(3));
  const auto cyclic = LabelGroup::cyclic(3);
  for (std::size_t i = 0; i < p.internal_count(); ++i) {
    const auto label = Permutation::from_zero_based({p.label(i).begin(), p.label(i).end()});
    CHECK(std::find(cyclic.elements().begin(), cyclic.elements().end(), label) != cyclic.elements().end());
  }
  CHECK_THROWS_AS(haar_sample(3, 2, rng, LabelGroup::cyclic(2)), DegreeError);
}

TEST_CASE("grigorchuk generators") {
  const auto gens = grigorchuk_generators();
  REQUIRE(gens.size() == 4);
  CHECK_THROWS_AS(grigorchuk_generator("x"), NameError);
  for (const auto& s : all_strings(2, 8)) {
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(to_string(act(gens[i], s)) == grig(static_cast<char>('a' + i), to_string(s)));
    }
  }
  // a moves the first letter only.
  CHECK(to_string(act(gens[0], vs("0110"))) == "1110");
  // d fixes everything below 0.
  for (const auto& s : all_strings(2, 10)) {
    if (!s.is_root() && s.letters[0] == 0) CHECK(act(gens[3], s) == s);
  }
}

TEST_CASE("grigorchuk relations to depth 14") {
  const auto gens = grigorchuk_generators();
  for (const char* w : {"aa", "bb", "cc", "dd", "bcd"}) {
    INFO(w);
    CHECK(is_identity_to_depth(parse_word(w), gens, 14));
  }
  CHECK(is_identity_to_depth(parse_word("adadadad"), gens, 8));
  CHECK_FALSE(is_identity_to_depth(parse_word("adad"), gens, 8));
  CHECK_FALSE(is_identity_to_depth(parse_word("a"), gens, 1));
  CHECK(is_identity_to_depth(parse_word("aa"), gens, 1));
  for (std::size_t i = 1; i < 4; ++i) {
    CHECK_FALSE(is_identity_to_depth(gens[i], 12));
  }
  CHECK(is_identity_to_depth(gens[0].with_state(gens[0].table().find("e")), 20));
}

TEST_CASE("sections") {
  const auto b = grigorchuk_generator("b");
  const auto d = grigorchuk_generator("d");
  CHECK(section(b, vs("1")).name() == "c");
  CHECK(section(d, vs("0")).name() == "e");
  CHECK(section(b, vs("")) == b);
  // act(a, x s) = x^a act(section(a, x), s)
  std::mt19937_64 rng(3);
  for (const auto& g : grigorchuk_generators()) {
    for (int i = 0; i < 50; ++i) {
      std::string s;
      for (int k = 0; k < 8; ++k) s.push_back(static_cast<char>('0' + rng() % 2));
      const auto full = act(g, vs(s));
      const auto head = act(g, vs(s.substr(0, 1)));
      const auto tail = act(section(g, vs(s.substr(0, 1))), vs(s.substr(1)));
      CHECK(to_string(full) == to_string(head) + to_string(tail));
    }
  }
}

TEST_CASE("rigid_mover examples") {
  auto rng = substream(10, 0);
  const auto m = rigid_mover(vs("0"), 2, 2, rng);
  CHECK(to_string(act(m, vs("00"))) == "01");
  CHECK(to_string(act(m, vs("01"))) == "00");
  CHECK(to_string(act(m, vs("10"))) == "10");
  CHECK(to_string(act(m, vs("11"))) == "11");
  CHECK_THROWS_AS(rigid_mover(vs("00"), 2, 2, rng), DepthError);

  for (std::uint64_t i = 0; i < 30; ++i) {
    auto r = substream(11, i);
    const auto p = rigid_mover(vs("01", 3), 3, 3, r);
    CHECK_FALSE(p.is_identity());
    for (const auto& s : all_strings(3, 3)) {
      if (!s.starts_with(vs("01", 3))) CHECK(act(p, s) == s);
    }
    const auto q = rigid_mover(vs("2", 3), 3, 3, r);
    CHECK(same_action(compose(p, q), compose(q, p)));
    // Anything supported on a disjoint subtree commutes.
    Portrait h = Portrait::identity(3, 3);
    h.set_label(vs("1", 3), Permutation::from_images({2, 3, 1}));
    h.set_label(vs("12", 3), Permutation::from_images({2, 1, 3}));
    CHECK(compose(p, h) == compose(h, p));
  }
}

TEST_CASE("rigid_transport") {
  const auto p = rigid_transport(vs("0110"), vs("0001"), 4);
  CHECK(to_string(act(p, vs("0110"))) == "0001");
  for (const auto& s : all_strings(2, 4)) {
    if (!s.starts_with(vs("0"))) CHECK(act(p, s) == s);
  }
}

TEST_CASE("rist_search examples") {
  const auto gens = grigorchuk_generators();
  const auto right = rist_search(gens, vs("1"), 1, 10);
  std::vector<std::string> names;
  for (const auto& w : right) names.push_back(to_string(w));
  CHECK(std::find(names.begin(), names.end(), "d") != names.end());
  CHECK(rist_search(gens, vs("0"), 1, 10).empty());
  CHECK_THROWS_AS(rist_search(gens, vs(""), 1, 10), RangeError);
  CHECK_THROWS_AS(rist_search(gens, vs("1"), 1, 1), DepthError);
  // Every returned word really is supported below the vertex.
  for (const auto& w : rist_search(gens, vs("1"), 3, 8)) {
    for (const auto& s : all_strings(2, 8)) {
      if (!s.is_root() && s.letters[0] == 0) CHECK(act(evaluate_portrait(w, gens, 8), s) == s);
    }
  }
}

TEST_CASE("portrait and automaton JSON round trip") {
  auto rng = substream(12, 0);
  const auto p = haar_sample(3, 3, rng);
  const auto j = portrait_to_json(p);
  CHECK(j["arity"] == 3);
  CHECK(portrait_from_json(j) == p);
  const Json sparse = Json::parse(R"({"arity": 2, "depth": 2, "labels": {"0": "2 1"}})");
  const auto q = portrait_from_json(sparse);
  CHECK(to_string(act(q, vs("00"))) == "01");
  CHECK(to_string(act(q, vs("10"))) == "10");
  CHECK_THROWS_AS(portrait_from_json(Json::parse(R"({"arity": 2, "depth": 2, "labels": {"00": "2 1"}})")), ParseError);
  CHECK_THROWS_AS(portrait_from_json(Json::parse(R"({"arity": 2})")), ParseError);

  const auto b = grigorchuk_generator("b");
  const auto back = automaton_from_json(automaton_to_json(b));
  CHECK(back.name() == "b");
  for (const auto& s : all_strings(2, 6)) CHECK(act(back, s) == act(b, s));
}
