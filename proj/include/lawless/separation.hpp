#pragma once

// Refuting group laws one word at a time.
//
// A group acting on a set separates it when the pointwise stabilizer of any
// finite Y moves every point outside Y.  For such an action, `witness` builds
// a tuple (h_1..h_k) and a trajectory x_0..x_n, x_j = x_0^{w_j(h)}, of
// pairwise distinct points.  Then w(h) moves x_0, so w is not a law.
//
// The construction is an induction on prefixes.  When the next point x_n
// collides with an earlier x_j, the offending generator h_m is multiplied by
// an element c that fixes Y = {x_i : i in I}, where
//
//     I = { i < n : v_i = v_n  or  v_{i+1} = v_n^{-1} },
//
// and sends x_j to a fresh point.  Fixing Y keeps every earlier step intact;
// j is never in I for a reduced word.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "words.hpp"

namespace lawless {

/// The interface an action must offer to the witness construction.
///
/// `apply` is a right action: apply(multiply(f, g), x) == apply(g, apply(f, x)).
/// `stabilizer_mover(Y, x, forbidden)` returns c fixing every point of Y with
/// apply(c, x) outside forbidden and different from x, or throws
/// MoverExhausted.  `orbit_bound(x)` is the size of the orbit of x when it is
/// finite and nullopt otherwise.
template <class A>
concept SeparatingAction =
    requires(const A& action, const typename A::Element& g, const typename A::Point& x,
             std::span<const typename A::Point> points) {
      { action.identity() } -> std::convertible_to<typename A::Element>;
      { action.multiply(g, g) } -> std::convertible_to<typename A::Element>;
      { action.invert(g) } -> std::convertible_to<typename A::Element>;
      { action.apply(g, x) } -> std::convertible_to<typename A::Point>;
      { action.stabilizer_mover(points, x, points) } -> std::convertible_to<typename A::Element>;
      { action.orbit_bound(x) } -> std::convertible_to<std::optional<std::size_t>>;
    } && std::equality_comparable<typename A::Point>;

/// Which side the mover was spliced on: right means h_m = g_m c (for
/// v_n = f_m), left means h_m = c^{-1} g_m (for v_n = f_m^{-1}).  In both
/// cases the new x_n is x_j^c.
enum class SpliceSide { right, left };

template <class Element, class Point>
struct Modification {
  std::size_t step = 0;                // n: the step whose point collided
  std::size_t collided_with = 0;       // j: x_n was equal to x_j
  std::vector<std::size_t> index_set;  // I
  std::vector<Point> fixed_points;     // Y = {x_i : i in I}
  Element mover;                       // c
  SpliceSide side = SpliceSide::right;
  Point moved_to;                      // x_j^c, the new x_n
};

template <class Element, class Point>
struct WitnessTrace {
  Word word;
  std::vector<Element> tuple;
  std::vector<Point> trajectory;
  std::vector<Modification<Element, Point>> modifications;
};

template <SeparatingAction A>
using TraceFor = WitnessTrace<typename A::Element, typename A::Point>;

namespace detail {

template <SeparatingAction A>
typename A::Element letter_value(const A& action, std::span<const typename A::Element> tuple,
                                 const Letter& l) {
  const auto& g = tuple[l.generator - 1];
  return l.sign > 0 ? g : action.invert(g);
}

template <class P>
std::optional<std::size_t> find_point(std::span<const P> points, const P& x) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i] == x) return i;
  }
  return std::nullopt;
}

}  // namespace detail

/// x_0, x_0^{v_1(tuple)}, ..., following the first `steps` letters of w.
template <SeparatingAction A>
std::vector<typename A::Point> trajectory(const A& action, const Word& w,
                                          std::span<const typename A::Element> tuple,
                                          const typename A::Point& x0,
                                          std::optional<std::size_t> steps = std::nullopt) {
  const std::size_t n = steps.value_or(w.size());
  if (tuple.size() < w.rank()) throw ArityError("tuple shorter than the rank of the word");
  std::vector<typename A::Point> xs{x0};
  xs.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    xs.push_back(action.apply(detail::letter_value(action, tuple, w[i]), xs.back()));
  }
  return xs;
}

/// Builds a witness trace for the reduced non-empty word w starting at x0.
template <SeparatingAction A>
TraceFor<A> witness(const Word& w, const A& action, const typename A::Point& x0) {
  using Element = typename A::Element;
  using Point = typename A::Point;
  if (w.empty()) throw EmptyWordError("the empty word is a law in every group");
  const std::size_t n = w.size();
  if (const auto bound = action.orbit_bound(x0); bound && *bound < n + 1) {
    throw SpaceError("a word of length " + std::to_string(n) + " needs " + std::to_string(n + 1) +
                     " distinct points but the orbit of the start point has only " +
                     std::to_string(*bound));
  }

  TraceFor<A> trace;
  trace.word = w;
  trace.tuple.assign(w.rank(), action.identity());
  trace.trajectory.push_back(x0);

  for (std::size_t step = 1; step <= n; ++step) {
    const Letter v = w[step - 1];
    const std::size_t m = v.generator - 1;
    const Point next = action.apply(detail::letter_value<A>(action, trace.tuple, v),
                                    trace.trajectory.back());
    const auto hit = detail::find_point<Point>(trace.trajectory, next);
    if (!hit) {
      trace.trajectory.push_back(next);
      continue;
    }
    const std::size_t j = *hit;

    // I = { i < step : v_i = v_step or v_{i+1} = v_step^{-1} }, with v_0 absent.
    std::vector<std::size_t> index_set;
    for (std::size_t i = 0; i < step; ++i) {
      const bool same_letter = i >= 1 && w[i - 1] == v;
      const bool inverse_next = w[i] == v.inverse();
      if (same_letter || inverse_next) index_set.push_back(i);
    }
    if (std::find(index_set.begin(), index_set.end(), j) != index_set.end()) {
      throw InvariantViolation("collision index " + std::to_string(j) + " lies in I at step " +
                               std::to_string(step));
    }
    std::vector<Point> fixed;
    for (auto i : index_set) fixed.push_back(trace.trajectory[i]);

    const Point& collided = trace.trajectory[j];
    Element c = action.stabilizer_mover(std::span<const Point>(fixed), collided,
                                        std::span<const Point>(trace.trajectory));
    for (const auto& y : fixed) {
      if (!(action.apply(c, y) == y)) throw InvariantViolation("mover does not fix Y pointwise");
    }
    Point target = action.apply(c, collided);
    if (detail::find_point<Point>(trace.trajectory, target)) {
      throw InvariantViolation("mover sent the collided point onto the trajectory");
    }

    const SpliceSide side = v.sign > 0 ? SpliceSide::right : SpliceSide::left;
    if (side == SpliceSide::right) {
      trace.tuple[m] = action.multiply(trace.tuple[m], c);
    } else {
      trace.tuple[m] = action.multiply(action.invert(c), trace.tuple[m]);
    }

    // The splice must leave x_0..x_{step-1} unchanged and land on x_j^c.
    const auto redone = trajectory(action, w, std::span<const Element>(trace.tuple), x0, step);
    for (std::size_t i = 0; i < step; ++i) {
      if (!(redone[i] == trace.trajectory[i])) {
        throw InvariantViolation("splice at step " + std::to_string(step) + " moved x_" +
                                 std::to_string(i));
      }
    }
    if (!(redone[step] == target)) {
      throw InvariantViolation("splice at step " + std::to_string(step) + " missed its target");
    }

    trace.trajectory.push_back(target);
    trace.modifications.push_back(Modification<Element, Point>{
        step, j, std::move(index_set), std::move(fixed), std::move(c), side, std::move(target)});
  }
  return trace;
}

struct VerifyResult {
  bool ok = true;
  std::string reason;  // the first violated condition when !ok

  explicit operator bool() const noexcept { return ok; }
  static VerifyResult failure(std::string why) { return {false, std::move(why)}; }
};

/// Recomputes the trajectory from the tuple and checks that it matches and
/// is pairwise distinct.  Independent of how the trace was produced.
template <SeparatingAction A>
VerifyResult verify_trace(const TraceFor<A>& t, const A& action) {
  using Point = typename A::Point;
  if (t.word.empty()) return VerifyResult::failure("word is empty");
  if (t.tuple.size() < t.word.rank()) return VerifyResult::failure("tuple shorter than the word's rank");
  if (t.trajectory.size() != t.word.size() + 1) {
    return VerifyResult::failure("trajectory has " + std::to_string(t.trajectory.size()) +
                                 " points, expected " + std::to_string(t.word.size() + 1));
  }
  for (std::size_t i = 0; i < t.word.size(); ++i) {
    const Point x = action.apply(
        detail::letter_value<A>(action, std::span<const typename A::Element>(t.tuple), t.word[i]),
        t.trajectory[i]);
    if (!(x == t.trajectory[i + 1])) {
      return VerifyResult::failure("trajectory point " + std::to_string(i + 1) +
                                   " does not match the recomputed image");
    }
  }
  for (std::size_t i = 0; i < t.trajectory.size(); ++i) {
    for (std::size_t k = i + 1; k < t.trajectory.size(); ++k) {
      if (t.trajectory[i] == t.trajectory[k]) {
        return VerifyResult::failure("trajectory points " + std::to_string(i) + " and " +
                                     std::to_string(k) + " coincide");
      }
    }
  }
  return {};
}

template <class Element, class Point>
struct Certificate {
  WitnessTrace<Element, Point> trace;
  Point final_point;  // x_0^{w(tuple)}, computed from the whole word value
};

template <SeparatingAction A>
using CertificateFor = Certificate<typename A::Element, typename A::Point>;

/// The value w(tuple) in the acting group.
template <SeparatingAction A>
typename A::Element word_value(const A& action, const Word& w,
                               std::span<const typename A::Element> tuple) {
  using Element = typename A::Element;
  return evaluate(w, tuple, action.identity(),
                  [&](const Element& a, const Element& b) { return action.multiply(a, b); },
                  [&](const Element& a) { return action.invert(a); });
}

/// Checks a certificate from scratch: the trace verifies, and applying the
/// full word value to x_0 lands on x_n, which differs from x_0.
template <SeparatingAction A>
VerifyResult verify_certificate(const CertificateFor<A>& cert, const A& action) {
  if (auto r = verify_trace<A>(cert.trace, action); !r) return r;
  const auto& t = cert.trace;
  const auto value = word_value(action, t.word, std::span<const typename A::Element>(t.tuple));
  const auto image = action.apply(value, t.trajectory.front());
  if (!(image == t.trajectory.back())) {
    return VerifyResult::failure("the word value does not carry x_0 to x_n");
  }
  if (!(cert.final_point == image)) return VerifyResult::failure("recorded final point is wrong");
  if (image == t.trajectory.front()) return VerifyResult::failure("the word value fixes x_0");
  return {};
}

/// A checked refutation of the law w = 1 for the given action.
template <SeparatingAction A>
CertificateFor<A> certify_not_law(const Word& w, const A& action, const typename A::Point& x0) {
  if (w.empty()) throw EmptyWordError("the identity word is a law in every group");
  CertificateFor<A> cert{witness(w, action, x0), x0};
  const auto value = word_value(action, w, std::span<const typename A::Element>(cert.trace.tuple));
  cert.final_point = action.apply(value, x0);
  if (auto r = verify_certificate<A>(cert, action); !r) {
    throw InvariantViolation("freshly built certificate failed verification: " + r.reason);
  }
  return cert;
}

}  // namespace lawless
