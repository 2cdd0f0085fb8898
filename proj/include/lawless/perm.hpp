#pragma once

// Finite permutation groups.
//
// Permutations act on the right: x^(fg) = (x^f)^g, so compose(f, g) applies f
// first.  Points are 1-based everywhere in the public interface; the image
// table is stored 0-based.

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "random.hpp"

namespace lawless {

using Point = std::size_t;
using BigInt = boost::multiprecision::cpp_int;

class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(std::size_t degree) {
    Permutation p;
    p.images_.resize(degree);
    std::iota(p.images_.begin(), p.images_.end(), 0u);
    return p;
  }

  /// From a 0-based image table; throws RangeError unless it is a bijection.
  static Permutation from_zero_based(std::vector<std::uint32_t> images) {
    std::vector<bool> seen(images.size(), false);
    for (auto y : images) {
      if (y >= images.size() || seen[y]) throw RangeError("image table is not a bijection");
      seen[y] = true;
    }
    Permutation p;
    p.images_ = std::move(images);
    return p;
  }

  /// From a 1-based image list: images[i] is the image of point i+1.
  static Permutation from_images(std::span<const Point> images) {
    std::vector<std::uint32_t> zero(images.size());
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (images[i] == 0) throw RangeError("points are 1-based");
      zero[i] = static_cast<std::uint32_t>(images[i] - 1);
    }
    return from_zero_based(std::move(zero));
  }
  static Permutation from_images(std::initializer_list<Point> images) {
    return from_images(std::span<const Point>(images.begin(), images.size()));
  }

  std::size_t degree() const noexcept { return images_.size(); }

  /// Raw 0-based image of 0-based point x.
  std::uint32_t operator[](std::size_t x) const noexcept { return images_[x]; }
  std::span<const std::uint32_t> images() const noexcept { return images_; }

  bool is_identity() const noexcept {
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (images_[i] != i) return false;
    }
    return true;
  }

  bool fixes(Point x) const noexcept { return images_[x - 1] == x - 1; }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  friend Permutation compose(const Permutation&, const Permutation&);
  friend void compose_into(Permutation&, const Permutation&);
  friend Permutation inverse(const Permutation&);

  std::vector<std::uint32_t> images_;
};

inline void require_same_degree(const Permutation& f, const Permutation& g) {
  if (f.degree() != g.degree()) {
    throw DegreeError("degree mismatch: " + std::to_string(f.degree()) + " vs " +
                      std::to_string(g.degree()));
  }
}

/// The product fg: apply f, then g.
inline Permutation compose(const Permutation& f, const Permutation& g) {
  require_same_degree(f, g);
  Permutation h;
  h.images_.resize(f.degree());
  for (std::size_t x = 0; x < f.degree(); ++x) h.images_[x] = g.images_[f.images_[x]];
  return h;
}

/// f <- fg in place.
inline void compose_into(Permutation& f, const Permutation& g) {
  require_same_degree(f, g);
  for (auto& y : f.images_) y = g.images_[y];
}

inline Permutation inverse(const Permutation& f) {
  Permutation h;
  h.images_.resize(f.degree());
  for (std::size_t x = 0; x < f.degree(); ++x) {
    h.images_[f.images_[x]] = static_cast<std::uint32_t>(x);
  }
  return h;
}

/// x^f for a 1-based point x.
inline Point act(Point x, const Permutation& f) {
  if (x < 1 || x > f.degree()) {
    throw RangeError("point " + std::to_string(x) + " outside 1.." + std::to_string(f.degree()));
  }
  return f[x - 1] + 1;
}

/// Permutation of the given degree with one cycle (points 1-based).
inline Permutation cycle(std::size_t degree, std::initializer_list<Point> points) {
  std::vector<std::uint32_t> img(degree);
  std::iota(img.begin(), img.end(), 0u);
  std::vector<Point> pts(points);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i] < 1 || pts[i] > degree) throw RangeError("cycle point out of range");
    img[pts[i] - 1] = static_cast<std::uint32_t>(pts[(i + 1) % pts.size()] - 1);
  }
  return Permutation::from_zero_based(std::move(img));
}

inline bool is_even(const Permutation& f) {
  std::vector<bool> seen(f.degree(), false);
  std::size_t transpositions = 0;
  for (std::size_t x = 0; x < f.degree(); ++x) {
    if (seen[x]) continue;
    std::size_t len = 0;
    for (std::size_t y = x; !seen[y]; y = f[y]) {
      seen[y] = true;
      ++len;
    }
    transpositions += len - 1;
  }
  return transpositions % 2 == 0;
}

/// "2 3 1": the 1-based image list.
inline std::string format_images(const Permutation& f) {
  std::string out;
  for (std::size_t x = 0; x < f.degree(); ++x) {
    if (x) out.push_back(' ');
    out += std::to_string(f[x] + 1);
  }
  return out;
}

/// "(1,2,3)(4,5)"; the identity prints as "()".
inline std::string format_cycles(const Permutation& f) {
  std::string out;
  std::vector<bool> seen(f.degree(), false);
  for (std::size_t x = 0; x < f.degree(); ++x) {
    if (seen[x] || f[x] == x) continue;
    out.push_back('(');
    for (std::size_t y = x; !seen[y]; y = f[y]) {
      seen[y] = true;
      if (y != x) out.push_back(',');
      out += std::to_string(y + 1);
    }
    out.push_back(')');
  }
  return out.empty() ? "()" : out;
}

/// Parses either an image list ("2 3 1") or cycle notation ("(1 2 3)(4 5)",
/// commas allowed inside cycles).  For cycle notation the degree is `degree`
/// when given, else the largest point mentioned.
inline Permutation parse_permutation(std::string_view text, std::size_t degree = 0) {
  const bool cycles = text.find('(') != std::string_view::npos;
  if (!cycles) {
    std::vector<Point> images;
    std::size_t i = 0;
    while (i < text.size()) {
      if (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',') {
        ++i;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
        throw ParseError("unexpected character in image list", i + 1);
      }
      Point v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + static_cast<Point>(text[i++] - '0');
      }
      images.push_back(v);
    }
    if (degree != 0 && images.size() != degree) {
      throw DegreeError("image list has " + std::to_string(images.size()) +
                        " entries, expected " + std::to_string(degree));
    }
    return Permutation::from_images(images);
  }

  std::vector<std::vector<Point>> parsed;
  Point largest = 0;
  std::size_t i = 0;
  bool open = false;
  while (i < text.size()) {
    const char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',') {
      ++i;
    } else if (ch == '(') {
      if (open) throw ParseError("nested '('", i + 1);
      open = true;
      parsed.emplace_back();
      ++i;
    } else if (ch == ')') {
      if (!open) throw ParseError("unmatched ')'", i + 1);
      open = false;
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(ch)) && open) {
      Point v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + static_cast<Point>(text[i++] - '0');
      }
      if (v == 0) throw ParseError("points are 1-based", i);
      parsed.back().push_back(v);
      largest = std::max(largest, v);
    } else {
      throw ParseError("unexpected character in cycle notation", i + 1);
    }
  }
  if (open) throw ParseError("unterminated cycle", text.size());
  const std::size_t n = degree ? degree : largest;
  if (largest > n) throw RangeError("cycle point exceeds degree");
  Permutation result = Permutation::identity(n);
  for (const auto& c : parsed) {
    std::vector<std::uint32_t> img(n);
    std::iota(img.begin(), img.end(), 0u);
    for (std::size_t k = 0; k < c.size(); ++k) {
      img[c[k] - 1] = static_cast<std::uint32_t>(c[(k + 1) % c.size()] - 1);
    }
    result = compose(result, Permutation::from_zero_based(std::move(img)));
  }
  return result;
}

class PermGroup {
 public:
  PermGroup(std::size_t degree, std::vector<Permutation> generators)
      : degree_(degree), generators_(std::move(generators)) {
    if (degree_ == 0) throw DegreeError("degree must be positive");
    if (generators_.empty()) generators_.push_back(Permutation::identity(degree_));
    for (const auto& g : generators_) {
      if (g.degree() != degree_) throw DegreeError("generator degree differs from group degree");
    }
  }

  std::size_t degree() const noexcept { return degree_; }
  std::span<const Permutation> generators() const noexcept { return generators_; }

 private:
  std::size_t degree_;
  std::vector<Permutation> generators_;
};

namespace detail {

// Breadth-first orbit of 0-based point x under gens, visiting generators in
// list order.  Optionally records, for each orbit point, the element carrying
// x to it.
inline std::vector<std::uint32_t> orbit_bfs(std::span<const Permutation> gens, std::size_t degree,
                                            std::uint32_t x,
                                            std::vector<Permutation>* reps = nullptr,
                                            std::vector<std::int32_t>* where = nullptr) {
  std::vector<std::int32_t> local_where;
  std::vector<std::int32_t>& pos = where ? *where : local_where;
  pos.assign(degree, -1);
  std::vector<std::uint32_t> orbit{x};
  pos[x] = 0;
  if (reps) {
    reps->clear();
    reps->push_back(Permutation::identity(degree));
  }
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    for (const auto& g : gens) {
      const std::uint32_t y = g[orbit[i]];
      if (pos[y] >= 0) continue;
      pos[y] = static_cast<std::int32_t>(orbit.size());
      orbit.push_back(y);
      if (reps) reps->push_back(compose((*reps)[i], g));
    }
  }
  return orbit;
}

}  // namespace detail

/// The orbit of 1-based point x under the group, sorted ascending.
inline std::vector<Point> orbit(const PermGroup& g, Point x) {
  if (x < 1 || x > g.degree()) throw RangeError("point out of range");
  auto raw = detail::orbit_bfs(g.generators(), g.degree(), static_cast<std::uint32_t>(x - 1));
  std::vector<Point> out;
  out.reserve(raw.size());
  for (auto y : raw) out.push_back(y + 1);
  std::sort(out.begin(), out.end());
  return out;
}

/// Base and strong generating set.  Level i stores the base point b_i, the
/// strong generators fixing b_1..b_{i-1}, the orbit of b_i under them and a
/// transversal: for each orbit point p an element u_p with b_i^{u_p} = p.
class Bsgs {
 public:
  struct Level {
    std::uint32_t base_point = 0;
    std::vector<Permutation> generators;
    std::vector<std::uint32_t> orbit;
    std::vector<std::int32_t> where;  // point -> index in orbit, or -1
    std::vector<Permutation> reps;
    std::vector<Permutation> rep_inverses;

    void rebuild(std::size_t degree) {
      orbit = detail::orbit_bfs(generators, degree, base_point, &reps, &where);
      rep_inverses.clear();
      rep_inverses.reserve(reps.size());
      for (const auto& r : reps) rep_inverses.push_back(inverse(r));
    }
  };

  Bsgs() = default;
  Bsgs(std::size_t degree, std::vector<Level> levels)
      : degree_(degree), levels_(std::move(levels)) {}

  std::size_t degree() const noexcept { return degree_; }
  std::span<const Level> levels() const noexcept { return levels_; }

  std::vector<Point> base() const {
    std::vector<Point> b;
    for (const auto& l : levels_) b.push_back(l.base_point + 1);
    return b;
  }

  /// Generators of the whole group (those at the first level).
  std::vector<Permutation> strong_generators() const {
    if (levels_.empty()) return {};
    return levels_.front().generators;
  }

  std::vector<std::size_t> transversal_sizes() const {
    std::vector<std::size_t> s;
    for (const auto& l : levels_) s.push_back(l.orbit.size());
    return s;
  }

  /// Sifts f through the chain from level `from`.  Returns the residue and
  /// the level at which sifting stopped (levels().size() if it went through).
  std::pair<Permutation, std::size_t> strip(Permutation f, std::size_t from = 0) const {
    for (std::size_t l = from; l < levels_.size(); ++l) {
      const auto& lev = levels_[l];
      const std::int32_t at = lev.where[f[lev.base_point]];
      if (at < 0) return {std::move(f), l};
      compose_into(f, lev.rep_inverses[static_cast<std::size_t>(at)]);
    }
    return {std::move(f), levels_.size()};
  }

 private:
  friend Bsgs build_bsgs(std::span<const Permutation>, std::size_t, std::span<const Point>);

  std::size_t degree_ = 0;
  std::vector<Level> levels_;
};

namespace detail {

inline std::uint32_t first_moved(const Permutation& f) {
  for (std::size_t x = 0; x < f.degree(); ++x) {
    if (f[x] != x) return static_cast<std::uint32_t>(x);
  }
  return 0;
}

}  // namespace detail

/// Deterministic Schreier-Sims.  The base starts with `base_prefix` (1-based,
/// duplicates ignored) and is extended by the first point moved by each
/// generator that fixes the current base.
inline Bsgs build_bsgs(std::span<const Permutation> generators, std::size_t degree,
                       std::span<const Point> base_prefix = {}) {
  std::vector<Permutation> gens;
  for (const auto& g : generators) {
    if (g.degree() != degree) throw DegreeError("generator degree differs from group degree");
    if (!g.is_identity() && std::find(gens.begin(), gens.end(), g) == gens.end()) {
      gens.push_back(g);
    }
  }

  std::vector<std::uint32_t> base;
  for (Point p : base_prefix) {
    if (p < 1 || p > degree) throw RangeError("base point out of range");
    auto q = static_cast<std::uint32_t>(p - 1);
    if (std::find(base.begin(), base.end(), q) == base.end()) base.push_back(q);
  }
  auto fixes_base = [&](const Permutation& g, std::size_t upto) {
    for (std::size_t i = 0; i < upto; ++i) {
      if (g[base[i]] != base[i]) return false;
    }
    return true;
  };
  for (const auto& g : gens) {
    if (fixes_base(g, base.size())) base.push_back(detail::first_moved(g));
  }

  std::vector<Bsgs::Level> levels(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    levels[i].base_point = base[i];
    for (const auto& g : gens) {
      if (fixes_base(g, i)) levels[i].generators.push_back(g);
    }
    levels[i].rebuild(degree);
  }

  Bsgs chain(degree, std::move(levels));
  auto& lv = chain.levels_;

  // Holt's SCHREIERSIMS: work down from the last level; whenever a Schreier
  // generator fails to sift, add its residue and resume at the level where
  // it stopped.
  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(lv.size()) - 1;
  while (i >= 0) {
    const auto level = static_cast<std::size_t>(i);
    bool restarted = false;
    for (std::size_t oi = 0; oi < lv[level].orbit.size() && !restarted; ++oi) {
      for (std::size_t gi = 0; gi < lv[level].generators.size(); ++gi) {
        const Permutation& s = lv[level].generators[gi];
        const std::uint32_t p = lv[level].orbit[oi];
        const std::uint32_t ps = s[p];
        Permutation schreier = compose(lv[level].reps[oi], s);
        compose_into(schreier,
                     lv[level].rep_inverses[static_cast<std::size_t>(lv[level].where[ps])]);
        if (schreier.is_identity()) continue;
        auto [residue, stop] = chain.strip(std::move(schreier), level + 1);
        if (stop == lv.size() && residue.is_identity()) continue;
        if (stop == lv.size()) {
          Bsgs::Level fresh;
          fresh.base_point = detail::first_moved(residue);
          lv.push_back(std::move(fresh));
        }
        for (std::size_t l = level + 1; l <= stop; ++l) {
          lv[l].generators.push_back(residue);
          lv[l].rebuild(degree);
        }
        i = static_cast<std::ptrdiff_t>(stop);
        restarted = true;
        break;
      }
    }
    if (!restarted) --i;
  }
  return chain;
}

inline Bsgs build_bsgs(const PermGroup& g) { return build_bsgs(g.generators(), g.degree()); }

inline BigInt group_order(const Bsgs& chain) {
  BigInt order = 1;
  for (const auto& l : chain.levels()) order *= l.orbit.size();
  return order;
}

inline bool contains(const Bsgs& chain, const Permutation& f) {
  if (f.degree() != chain.degree()) throw DegreeError("permutation degree differs from group");
  auto [residue, stop] = chain.strip(f);
  return stop == chain.levels().size() && residue.is_identity();
}

/// A chain for G_Y, the pointwise stabilizer of Y.  The base is first
/// rebuilt to start with Y; the levels past Y form a chain for G_Y whose
/// strong generators all fix Y.
inline Bsgs pointwise_stabilizer(const Bsgs& chain, std::span<const Point> ys) {
  auto gens = chain.strong_generators();
  Bsgs full = build_bsgs(gens, chain.degree(), ys);
  std::vector<Point> distinct;
  for (Point y : ys) {
    if (std::find(distinct.begin(), distinct.end(), y) == distinct.end()) distinct.push_back(y);
  }
  std::vector<Bsgs::Level> rest(full.levels().begin() + static_cast<std::ptrdiff_t>(
                                    std::min(distinct.size(), full.levels().size())),
                                full.levels().end());
  // Drop trailing levels whose orbit is trivial; they carry no generators.
  while (!rest.empty() && rest.back().orbit.size() == 1 && rest.back().generators.empty()) {
    rest.pop_back();
  }
  return Bsgs(chain.degree(), std::move(rest));
}

/// All orbits of the chain's group, each sorted, ordered by least point.
inline std::vector<std::vector<Point>> orbits(const Bsgs& chain) {
  auto gens = chain.strong_generators();
  std::vector<bool> seen(chain.degree(), false);
  std::vector<std::vector<Point>> out;
  for (std::uint32_t x = 0; x < chain.degree(); ++x) {
    if (seen[x]) continue;
    auto raw = detail::orbit_bfs(gens, chain.degree(), x);
    std::vector<Point> orb;
    for (auto y : raw) {
      seen[y] = true;
      orb.push_back(y + 1);
    }
    std::sort(orb.begin(), orb.end());
    out.push_back(std::move(orb));
  }
  return out;
}

/// Exactly uniform element: one uniform transversal pick per level, multiplied
/// as u_m ... u_2 u_1 (every element factors uniquely this way).
template <class Rng>
Permutation uniform_element(const Bsgs& chain, Rng& rng) {
  Permutation g = Permutation::identity(chain.degree());
  const auto levels = chain.levels();
  for (std::size_t i = levels.size(); i-- > 0;) {
    const auto& l = levels[i];
    const auto pick = uniform_below(rng, l.reps.size());
    compose_into(g, l.reps[pick]);
  }
  return g;
}

/// Every element of the group, in mixed-radix order over the transversals.
inline std::vector<Permutation> elements(const Bsgs& chain, std::size_t limit) {
  const BigInt order = group_order(chain);
  if (order > limit) throw BudgetError("group order " + order.str() + " exceeds listing budget");
  const auto levels = chain.levels();
  std::vector<Permutation> out{Permutation::identity(chain.degree())};
  for (std::size_t i = levels.size(); i-- > 0;) {
    std::vector<Permutation> next;
    next.reserve(out.size() * levels[i].reps.size());
    for (const auto& g : out) {
      for (const auto& r : levels[i].reps) next.push_back(compose(g, r));
    }
    out = std::move(next);
  }
  return out;
}

enum class StandardKind { alternating, symmetric };

/// Symmetric: (1,2) and (1,...,k).  Alternating: (1,2,3) and, for k >= 4,
/// (1,...,k) when k is odd or (2,...,k) when k is even.
inline PermGroup standard_group(StandardKind kind, std::size_t k) {
  if (kind == StandardKind::symmetric) {
    if (k < 2) throw RangeError("symmetric group needs degree >= 2");
    std::vector<std::uint32_t> long_cycle(k);
    for (std::size_t i = 0; i < k; ++i) long_cycle[i] = static_cast<std::uint32_t>((i + 1) % k);
    return PermGroup(k, {cycle(k, {1, 2}), Permutation::from_zero_based(std::move(long_cycle))});
  }
  if (k < 3) throw RangeError("alternating group needs degree >= 3");
  std::vector<Permutation> gens{cycle(k, {1, 2, 3})};
  if (k >= 4) {
    std::vector<std::uint32_t> img(k);
    std::iota(img.begin(), img.end(), 0u);
    const std::size_t start = (k % 2 == 1) ? 0 : 1;
    for (std::size_t i = start; i < k; ++i) {
      img[i] = static_cast<std::uint32_t>(i + 1 < k ? i + 1 : start);
    }
    gens.push_back(Permutation::from_zero_based(std::move(img)));
  }
  return PermGroup(k, std::move(gens));
}

struct SeparationMode {
  enum class Kind { exact, sampled } kind = Kind::exact;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::size_t budget = 200'000;

  static SeparationMode exact(std::size_t budget = 200'000) {
    return SeparationMode{Kind::exact, 0, 0, budget};
  }
  static SeparationMode sampled(std::size_t trials, std::uint64_t seed) {
    return SeparationMode{Kind::sampled, trials, seed, 0};
  }
};

struct SeparationReport {
  std::size_t a = 0;          // minimum orbit size of G_Y on X \ Y
  bool exact = true;          // false: an upper bound from sampled Y
  std::size_t sets_examined = 0;
  std::vector<Point> worst_set;  // a Y attaining the minimum
};

namespace detail {

inline std::size_t min_orbit_outside(const Bsgs& stab, std::span<const Point> ys) {
  std::size_t best = stab.degree();
  for (const auto& orb : orbits(stab)) {
    if (orb.size() == 1 && std::find(ys.begin(), ys.end(), orb.front()) != ys.end()) continue;
    best = std::min(best, orb.size());
  }
  return best;
}

inline BigInt binomial(std::size_t n, std::size_t k) {
  BigInt r = 1;
  for (std::size_t i = 0; i < k; ++i) {
    r *= n - i;
    r /= i + 1;
  }
  return r;
}

}  // namespace detail

/// The largest a such that the group separates its points in order (n, a):
/// the minimum over |Y| = n of the smallest G_Y-orbit on X \ Y.
inline SeparationReport separation_order(const Bsgs& chain, std::size_t n,
                                         const SeparationMode& mode = SeparationMode::exact()) {
  const std::size_t m = chain.degree();
  if (n >= m) throw RangeError("n must be smaller than the degree");
  SeparationReport report;
  report.a = m;
  auto consider = [&](const std::vector<Point>& ys) {
    const std::size_t a = detail::min_orbit_outside(pointwise_stabilizer(chain, ys), ys);
    if (report.sets_examined++ == 0 || a < report.a) {
      report.a = a;
      report.worst_set = ys;
    }
  };

  if (mode.kind == SeparationMode::Kind::exact) {
    const BigInt count = detail::binomial(m, n);
    if (count > mode.budget) {
      throw BudgetError(count.str() + " candidate sets exceed the exact budget of " +
                        std::to_string(mode.budget) + "; use sampled mode");
    }
    std::vector<Point> ys(n);
    std::iota(ys.begin(), ys.end(), Point{1});
    for (;;) {
      consider(ys);
      if (report.a == 1) break;
      // Next combination in lexicographic order.
      std::size_t i = n;
      while (i > 0 && ys[i - 1] == m - n + i) --i;
      if (i == 0) break;
      ++ys[i - 1];
      for (std::size_t j = i; j < n; ++j) ys[j] = ys[j - 1] + 1;
    }
    return report;
  }

  report.exact = false;
  std::vector<Point> points(m);
  std::iota(points.begin(), points.end(), Point{1});
  for (std::size_t t = 0; t < mode.trials; ++t) {
    auto rng = substream(mode.seed, t);
    for (std::size_t i = 0; i < n; ++i) {
      std::swap(points[i], points[i + uniform_below(rng, m - i)]);
    }
    std::vector<Point> ys(points.begin(), points.begin() + static_cast<std::ptrdiff_t>(n));
    std::sort(ys.begin(), ys.end());
    consider(ys);
  }
  return report;
}

/// Separation order of the natural action of A_k or S_k on n-point sets.
/// S_k: every Y leaves Sym(X \ Y), one orbit of size k - n.  A_k: the same
/// until |X \ Y| = 2, where the stabilizer is trivial.
inline std::size_t known_separation_order(StandardKind kind, std::size_t k, std::size_t n) {
  if (n >= k) throw RangeError("n must be smaller than the degree");
  if (kind == StandardKind::alternating && n + 2 >= k) return 1;
  return k - n;
}

}  // namespace lawless
