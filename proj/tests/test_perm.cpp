#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "lawless/perm.hpp"
#include "lawless/random.hpp"
#include "oracles.hpp"

using namespace lawless;

namespace {

Permutation swap12(std::size_t n = 3) { return cycle(n, {1, 2}); }

oracle::Images raw(const Permutation& p) { return {p.images().begin(), p.images().end()}; }

Permutation random_perm(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::uint32_t> img(n);
  std::iota(img.begin(), img.end(), 0u);
  std::shuffle(img.begin(), img.end(), rng);
  return Permutation::from_zero_based(img);
}

Bsgs a5() { return build_bsgs(PermGroup(5, {cycle(5, {1, 2, 3}), cycle(5, {3, 4, 5})})); }

}  // namespace

TEST_CASE("compose examples") {
  CHECK(compose(swap12(), swap12()).is_identity());
  CHECK(compose(cycle(3, {1, 2, 3}), cycle(3, {1, 2, 3})) == cycle(3, {1, 3, 2}));
  CHECK(compose(cycle(3, {1, 2, 3}), swap12()) == Permutation::from_images({1, 3, 2}));
  CHECK_THROWS_AS(compose(swap12(3), swap12(4)), DegreeError);
}

TEST_CASE("act examples") {
  CHECK(act(1, Permutation::identity(3)) == 1);
  CHECK(act(1, cycle(3, {1, 2, 3})) == 2);
  CHECK(act(3, swap12()) == 3);
  CHECK_THROWS_AS(act(4, swap12()), RangeError);
  CHECK_THROWS_AS(act(0, swap12()), RangeError);
}

TEST_CASE("permutation text formats") {
  const auto p = parse_permutation("2 3 1");
  CHECK(p == cycle(3, {1, 2, 3}));
  CHECK(format_images(p) == "2 3 1");
  CHECK(parse_permutation("(1 2 3)(4 5)") == compose(cycle(5, {1, 2, 3}), cycle(5, {4, 5})));
  CHECK(parse_permutation("(1 2)", 4).degree() == 4);
  CHECK(format_cycles(parse_permutation("(1 2 3)(4 5)")) == "(1,2,3)(4,5)");
  CHECK(parse_permutation(format_cycles(p), 3) == p);
  CHECK_THROWS_AS(parse_permutation("1 1 2"), Error);
  CHECK_THROWS_AS(Permutation::from_images({1, 3}), Error);
}

TEST_CASE("act is a right action") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto f = random_perm(rng, 7), g = random_perm(rng, 7);
    for (Point x = 1; x <= 7; ++x) CHECK(act(x, compose(f, g)) == act(act(x, f), g));
    CHECK(compose(f, inverse(f)).is_identity());
  }
}

TEST_CASE("orbit examples") {
  const PermGroup g(5, {cycle(5, {1, 2, 3}), cycle(5, {3, 4, 5})});
  CHECK(orbit(g, 1) == std::vector<Point>{1, 2, 3, 4, 5});
  CHECK(orbit(PermGroup(3, {}), 2) == std::vector<Point>{2});
  CHECK(orbit(PermGroup(4, {cycle(4, {1, 2})}), 3) == std::vector<Point>{3});
  CHECK_THROWS_AS(orbit(g, 6), RangeError);
}

TEST_CASE("build_bsgs and group_order examples") {
  CHECK(group_order(a5()) == 60);
  CHECK(group_order(build_bsgs(PermGroup(4, {cycle(4, {1, 2}), cycle(4, {1, 2, 3, 4})}))) == 24);
  CHECK(group_order(build_bsgs(PermGroup(4, {compose(cycle(4, {1, 2}), cycle(4, {3, 4}))}))) == 2);
  CHECK(group_order(build_bsgs(standard_group(StandardKind::alternating, 4))) == 12);
  CHECK(group_order(build_bsgs(PermGroup(5, {}))) == 1);
  CHECK(group_order(build_bsgs(PermGroup(7, {cycle(7, {1, 2, 3, 4, 5, 6, 7})}))) == 7);
}

TEST_CASE("build_bsgs is deterministic") {
  const auto a = build_bsgs(standard_group(StandardKind::alternating, 9));
  const auto b = build_bsgs(standard_group(StandardKind::alternating, 9));
  CHECK(a.base() == b.base());
  CHECK(a.transversal_sizes() == b.transversal_sizes());
  const auto ga = a.strong_generators(), gb = b.strong_generators();
  CHECK(ga == gb);
}

TEST_CASE("contains examples") {
  const auto a4 = build_bsgs(standard_group(StandardKind::alternating, 4));
  CHECK_FALSE(contains(a4, cycle(4, {1, 2})));
  CHECK(contains(a4, Permutation::identity(4)));
  CHECK(contains(a4, cycle(4, {1, 2, 3})));
  CHECK_THROWS_AS(contains(a4, Permutation::identity(5)), DegreeError);
}

TEST_CASE("group order matches brute-force closure on random subgroups") {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 60; ++iter) {
    const std::size_t m = 2 + rng() % 6;
    const std::size_t ngens = 1 + rng() % 3;
    std::vector<Permutation> gens;
    std::vector<oracle::Images> raws;
    for (std::size_t i = 0; i < ngens; ++i) {
      gens.push_back(random_perm(rng, m));
      raws.push_back(raw(gens.back()));
    }
    const auto chain = build_bsgs(PermGroup(m, gens));
    const auto all = oracle::closure(raws, m);
    CHECK(group_order(chain) == all.size());
    // Membership agrees with the closure on a sample of permutations.
    for (int t = 0; t < 20; ++t) {
      const auto p = random_perm(rng, m);
      CHECK(contains(chain, p) == (all.count(raw(p)) == 1));
    }
  }
}

TEST_CASE("pointwise stabilizer examples") {
  const auto chain = a5();
  const std::vector<Point> y12{1, 2};
  const auto stab = pointwise_stabilizer(chain, y12);
  CHECK(group_order(stab) == 3);
  for (const auto& g : elements(stab, 100)) {
    CHECK(g.fixes(1));
    CHECK(g.fixes(2));
    CHECK(is_even(g));
  }
  CHECK(group_order(pointwise_stabilizer(chain, std::vector<Point>{})) == 60);
  const auto a4 = build_bsgs(standard_group(StandardKind::alternating, 4));
  CHECK(group_order(pointwise_stabilizer(a4, std::vector<Point>{1, 2, 3})) == 1);
}

TEST_CASE("pointwise stabilizer matches filtering a full enumeration") {
  std::mt19937_64 rng(99);
  for (int iter = 0; iter < 40; ++iter) {
    const std::size_t m = 3 + rng() % 5;
    std::vector<Permutation> gens{random_perm(rng, m), random_perm(rng, m)};
    const auto chain = build_bsgs(PermGroup(m, gens));
    const auto all = oracle::closure({raw(gens[0]), raw(gens[1])}, m);
    std::vector<Point> ys;
    for (Point p = 1; p <= m; ++p) {
      if (rng() % 3 == 0) ys.push_back(p);
    }
    std::set<oracle::Images> expected;
    for (const auto& g : all) {
      if (std::all_of(ys.begin(), ys.end(), [&](Point y) { return g[y - 1] == y - 1; })) expected.insert(g);
    }
    const auto stab = pointwise_stabilizer(chain, ys);
    std::set<oracle::Images> got;
    for (const auto& g : elements(stab, 10000)) got.insert(raw(g));
    CHECK(got == expected);
    for (const auto& g : stab.strong_generators()) {
      for (Point y : ys) CHECK(g.fixes(y));
    }
  }
}

TEST_CASE("separation_order examples") {
  CHECK(separation_order(a5(), 2).a == 3);
  CHECK(separation_order(build_bsgs(standard_group(StandardKind::alternating, 6)), 1).a == 5);
  CHECK(separation_order(build_bsgs(PermGroup(3, {})), 0).a == 1);
  // binomial(22, 11) = 705432 exceeds the default budget of 200000.
  const auto a22 = build_bsgs(standard_group(StandardKind::alternating, 22));
  CHECK_THROWS_AS(separation_order(a22, 11), BudgetError);
  const auto sampled = separation_order(a22, 11, SeparationMode::sampled(20, 5));
  CHECK_FALSE(sampled.exact);
  CHECK(sampled.a == 11);
  CHECK(sampled.sets_examined == 20);
}

TEST_CASE("separation order of A_k on n-sets") {
  // k - n while at least three points remain outside Y; with two left, the
  // stabilizer in A_k is trivial and the order drops to 1.
  for (std::size_t k = 4; k <= 9; ++k) {
    const auto chain = build_bsgs(standard_group(StandardKind::alternating, k));
    for (std::size_t n = 1; n + 1 < k; ++n) {
      const auto rep = separation_order(chain, n);
      const std::size_t expected = n + 3 <= k ? k - n : 1;
      INFO("k=" << k << " n=" << n);
      CHECK(rep.a == expected);
      CHECK(rep.a == known_separation_order(StandardKind::alternating, k, n));
    }
  }
  for (std::size_t k = 3; k <= 7; ++k) {
    const auto chain = build_bsgs(standard_group(StandardKind::symmetric, k));
    for (std::size_t n = 0; n < k; ++n) {
      CHECK(separation_order(chain, n).a == k - n);
      CHECK(known_separation_order(StandardKind::symmetric, k, n) == k - n);
    }
  }
}

TEST_CASE("standard_group examples") {
  CHECK(group_order(build_bsgs(standard_group(StandardKind::alternating, 4))) == 12);
  CHECK(group_order(build_bsgs(standard_group(StandardKind::symmetric, 5))) == 120);
  CHECK_THROWS_AS(standard_group(StandardKind::alternating, 2), RangeError);
  CHECK_THROWS_AS(standard_group(StandardKind::symmetric, 1), RangeError);
  for (std::size_t k = 3; k <= 10; ++k) {
    BigInt fact = 1;
    for (std::size_t i = 2; i <= k; ++i) fact *= i;
    CHECK(group_order(build_bsgs(standard_group(StandardKind::alternating, k))) == fact / 2);
    CHECK(group_order(build_bsgs(standard_group(StandardKind::symmetric, k))) == fact);
  }
}

TEST_CASE("uniform_element examples") {
  auto rng = substream(1, 0);
  const auto trivial = build_bsgs(PermGroup(4, {}));
  for (int i = 0; i < 100; ++i) CHECK(uniform_element(trivial, rng).is_identity());

  const auto c2 = build_bsgs(PermGroup(3, {swap12()}));
  std::uint64_t ids = 0;
  const std::uint64_t draws = 10'000;
  for (std::uint64_t i = 0; i < draws; ++i) {
    auto r = substream(2, i);
    if (uniform_element(c2, r).is_identity()) ++ids;
  }
  // 99.9% Hoeffding radius for 10^4 draws is about 0.0195.
  CHECK(std::abs(static_cast<double>(ids) / draws - 0.5) < 0.0195);
}

TEST_CASE("uniform_element on A_4 passes chi-square, also after translation") {
  const auto a4 = build_bsgs(standard_group(StandardKind::alternating, 4));
  const auto elems = elements(a4, 100);
  REQUIRE(elems.size() == 12);
  std::map<Permutation, std::size_t> index;
  for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = i;
  const Permutation t = cycle(4, {1, 2, 3});
  std::vector<std::uint64_t> plain(12, 0), shifted(12, 0);
  for (std::uint64_t i = 0; i < 100'000; ++i) {
    auto rng = substream(3, i);
    const auto g = uniform_element(a4, rng);
    ++plain[index.at(g)];
    ++shifted[index.at(compose(g, t))];
  }
  const double crit = oracle::chi_square_critical(11, 0.01);
  CHECK(oracle::chi_square_uniform(plain) < crit);
  CHECK(oracle::chi_square_uniform(shifted) < crit);
}
