#pragma once

// Concrete separating actions: permutation groups on {1..k}, the full
// automorphism group of a truncated regular tree on its deepest level, and
// Thompson's group F on the dyadic rationals of [0,1].

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "perm.hpp"
#include "separation.hpp"
#include "thompson.hpp"
#include "trees.hpp"

namespace lawless {

namespace detail {

template <class P>
bool contains_point(std::span<const P> pts, const P& x) {
  return std::find(pts.begin(), pts.end(), x) != pts.end();
}

template <class P, class Fmt>
std::string describe_points(std::span<const P> pts, Fmt fmt) {
  std::string out = "{";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ",";
    out += fmt(pts[i]);
  }
  return out + "}";
}

}  // namespace detail

/// A permutation group given by a stabilizer chain.  The mover picks the
/// least admissible point in the G_Y-orbit of x and returns its transversal
/// element.
class PermAction {
 public:
  using Element = Permutation;
  using Point = lawless::Point;

  explicit PermAction(Bsgs chain, std::string spec = "perm")
      : chain_(std::move(chain)), spec_(std::move(spec)) {}

  static PermAction standard(StandardKind kind, std::size_t k) {
    return PermAction(build_bsgs(standard_group(kind, k)),
                      (kind == StandardKind::alternating ? "alt:" : "sym:") + std::to_string(k));
  }

  const Bsgs& chain() const noexcept { return chain_; }
  const std::string& spec() const noexcept { return spec_; }
  std::size_t degree() const noexcept { return chain_.degree(); }

  Element identity() const { return Permutation::identity(degree()); }
  Element multiply(const Element& f, const Element& g) const { return compose(f, g); }
  Element invert(const Element& f) const { return inverse(f); }
  Point apply(const Element& g, Point x) const { return act(x, g); }

  Element stabilizer_mover(std::span<const Point> ys, Point x, std::span<const Point> forbidden) const {
    if (x < 1 || x > degree()) throw RangeError("point out of range");
    const Bsgs stab = pointwise_stabilizer(chain_, ys);
    const auto gens = stab.strong_generators();
    std::vector<Permutation> reps;
    const auto orb = detail::orbit_bfs(gens, degree(), static_cast<std::uint32_t>(x - 1), &reps);
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < orb.size(); ++i) {
      const Point p = orb[i] + 1;
      if (p == x || detail::contains_point(forbidden, p)) continue;
      if (!best || orb[i] < orb[*best]) best = i;
    }
    if (!best) {
      auto fmt = [](Point p) { return std::to_string(p); };
      throw MoverExhausted("stabilizer of " + detail::describe_points(ys, fmt) +
                           " has no admissible image of " + std::to_string(x) + " outside " +
                           detail::describe_points(forbidden, fmt));
    }
    return reps[*best];
  }

  std::optional<std::size_t> orbit_bound(Point x) const {
    if (x < 1 || x > degree()) throw RangeError("point out of range");
    const auto gens = chain_.strong_generators();
    return detail::orbit_bfs(gens, degree(), static_cast<std::uint32_t>(x - 1)).size();
  }

 private:
  Bsgs chain_;
  std::string spec_;
};

/// Aut of the d-regular tree truncated at depth D, acting on strings of
/// length D.  The mover looks for the shallowest prefix v of x at which x can
/// branch off to an admissible target t, then sends x to t by a rigid
/// transport.  That element only moves the two child subtrees of v
/// holding x and t, so both must miss Y.  Branching high keeps trajectory
/// points apart; in a binary tree fixing a leaf also fixes its sibling.
class TreeAction {
 public:
  using Element = Portrait;
  using Point = VertexString;

  TreeAction(std::size_t arity, std::size_t depth) : arity_(arity), depth_(depth) {
    if (arity < 2 || arity > 10) throw RangeError("arity must be between 2 and 10");
    if (depth == 0) throw DepthError("depth must be positive");
  }

  std::size_t arity() const noexcept { return arity_; }
  std::size_t depth() const noexcept { return depth_; }
  std::string spec() const { return "tree:" + std::to_string(arity_) + "," + std::to_string(depth_); }

  Element identity() const { return Portrait::identity(arity_, depth_); }
  Element multiply(const Element& f, const Element& g) const { return compose(f, g); }
  Element invert(const Element& f) const { return inverse(f); }
  Point apply(const Element& g, const Point& x) const {
    check(x);
    return act(g, x);
  }

  Element stabilizer_mover(std::span<const Point> ys, const Point& x,
                           std::span<const Point> forbidden) const {
    check(x);
    for (std::size_t level = 0; level < depth_; ++level) {
      VertexString v{arity_, {x.letters.begin(), x.letters.begin() + static_cast<std::ptrdiff_t>(level)}};
      if (hits(ys, v, x.letters[level])) continue;
      if (auto target = least_target(v, x, ys, forbidden)) return rigid_transport(x, *target, depth_);
    }
    auto fmt = [](const Point& p) { return to_string(p); };
    throw MoverExhausted("no vertex above " + to_string(x) + " has child subtrees avoiding " +
                         detail::describe_points(ys, fmt) + " with a free leaf outside " +
                         detail::describe_points(forbidden, fmt));
  }

  std::optional<std::size_t> orbit_bound(const Point& x) const {
    check(x);
    return detail::ipow(arity_, depth_);
  }

 private:
  void check(const Point& x) const {
    if (x.arity != arity_) throw ShapeError("vertex arity differs from the tree's");
    if (x.size() != depth_) throw DepthError("points must be strings of length " + std::to_string(depth_));
  }

  // Whether some y lies below the child v·c.
  static bool hits(std::span<const Point> ys, const VertexString& v, std::uint8_t c) {
    const std::size_t at = v.size();
    return std::any_of(ys.begin(), ys.end(),
                       [&](const Point& y) { return y.starts_with(v) && y.letters[at] == c; });
  }

  // Target below v whose letter after v differs from x's and names a child
  // subtree free of Y.  Each letter is chosen to enter the subtree holding
  // the fewest forbidden points (least letter on ties), skipping full ones,
  // so new points land far from the trajectory.
  std::optional<Point> least_target(const VertexString& v, const Point& x, std::span<const Point> ys,
                                    std::span<const Point> forbidden) const {
    const std::size_t at = v.size();
    Point t{arity_, v.letters};
    for (std::size_t i = at; i < depth_; ++i) {
      const std::size_t capacity = detail::ipow(arity_, depth_ - i - 1);
      std::optional<std::uint8_t> best;
      std::size_t best_count = 0;
      for (std::uint8_t c = 0; c < arity_; ++c) {
        if (i == at && (c == x.letters[at] || hits(ys, v, c))) continue;
        t.letters.push_back(c);
        const auto count = static_cast<std::size_t>(std::count_if(
            forbidden.begin(), forbidden.end(), [&](const Point& f) { return f.starts_with(t); }));
        t.letters.pop_back();
        if (count >= capacity) continue;
        if (!best || count < best_count) {
          best = c;
          best_count = count;
        }
      }
      if (!best) return std::nullopt;
      t.letters.push_back(*best);
    }
    return t;
  }

  std::size_t arity_;
  std::size_t depth_;
};

/// Thompson's group F on dyadic points of [0,1].  The mover takes the
/// largest dyadic cell around x whose interior misses Y and rescales a power
/// of x_0 into it.
class ThompsonAction {
 public:
  using Element = PLMap;
  using Point = Dyadic;

  explicit ThompsonAction(std::int64_t power_cap = 64, std::uint64_t max_level = 4096)
      : power_cap_(power_cap), max_level_(max_level) {}

  std::string spec() const { return "thompson"; }

  Element identity() const { return PLMap::identity(); }
  Element multiply(const Element& f, const Element& g) const { return compose(f, g); }
  Element invert(const Element& f) const { return inverse(f); }
  Point apply(const Element& g, const Point& x) const { return eval(g, x); }

  Element stabilizer_mover(std::span<const Point> ys, const Point& x,
                           std::span<const Point> forbidden) const {
    if (!(Dyadic(0) < x && x < Dyadic(1))) {
      throw MoverExhausted("the endpoints 0 and 1 are fixed by every element");
    }
    for (std::uint64_t level = 1; level <= x.exponent() + max_level_; ++level) {
      const auto [lo, hi] = cell(x, level);
      if (!(Dyadic(0) < lo) || !(hi < Dyadic(1))) continue;
      const bool hits_y = std::any_of(ys.begin(), ys.end(),
                                      [&](const Point& y) { return lo < y && y < hi; });
      if (hits_y) continue;
      try {
        return interval_mover(lo, hi, x, forbidden, power_cap_).map;
      } catch (const CapError&) {
        continue;
      }
    }
    throw MoverExhausted("no dyadic interval around " + to_string(x) + " admits a mover");
  }

  std::optional<std::size_t> orbit_bound(const Point& x) const {
    if (x < Dyadic(0) || Dyadic(1) < x) throw RangeError("point outside [0,1]");
    if (x == Dyadic(0) || x == Dyadic(1)) return 1;
    return std::nullopt;
  }

 private:
  // The dyadic cell of width 2^-level containing x in its interior; when x
  // lies on the grid, the two cells meeting at x.
  static std::pair<Dyadic, Dyadic> cell(const Dyadic& x, std::uint64_t level) {
    using Int = Dyadic::Int;
    if (level >= x.exponent()) {
      const Int n = x.numerator() << static_cast<unsigned>(level - x.exponent());
      return {Dyadic(Int(n - 1), level), Dyadic(Int(n + 1), level)};
    }
    const Int fl = x.numerator() >> static_cast<unsigned>(x.exponent() - level);
    return {Dyadic(fl, level), Dyadic(Int(fl + 1), level)};
  }

  std::int64_t power_cap_;
  std::uint64_t max_level_;
};

static_assert(SeparatingAction<PermAction>);
static_assert(SeparatingAction<TreeAction>);
static_assert(SeparatingAction<ThompsonAction>);

}  // namespace lawless
