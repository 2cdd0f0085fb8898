#pragma once

// Automorphisms of the rooted d-ary tree.
//
// Vertices are strings over {0..d-1}; the empty string is the root.  A
// Portrait stores one permutation label per vertex above the truncation
// depth D and so represents an element of the level-D quotient of Aut(T).
// A FiniteStateAut is given by wreath recursion: each state has a root
// permutation and one child state per letter.  Both act on the right:
// (x s)^g = x^{label} (s)^{g|x}, where g|x is the section at x.
//
// "Identity" always means identity to a stated depth.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "perm.hpp"
#include "random.hpp"
#include "words.hpp"

namespace lawless {

struct VertexString {
  std::size_t arity = 2;
  std::vector<std::uint8_t> letters;

  std::size_t size() const noexcept { return letters.size(); }
  bool is_root() const noexcept { return letters.empty(); }

  bool starts_with(const VertexString& p) const {
    return p.size() <= size() && std::equal(p.letters.begin(), p.letters.end(), letters.begin());
  }

  friend bool operator==(const VertexString&, const VertexString&) = default;
  friend auto operator<=>(const VertexString&, const VertexString&) = default;
};

/// Parses "0110"; each character must be a digit below the arity.
inline VertexString parse_vertex(std::string_view text, std::size_t arity) {
  if (arity < 2 || arity > 10) throw RangeError("vertex strings need arity in 2..10");
  VertexString v{arity, {}};
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch < '0' || ch > '9' || static_cast<std::size_t>(ch - '0') >= arity) {
      throw ParseError(std::string("invalid vertex letter '") + ch + "'", i + 1);
    }
    v.letters.push_back(static_cast<std::uint8_t>(ch - '0'));
  }
  return v;
}

inline std::string to_string(const VertexString& v) {
  std::string s;
  for (auto x : v.letters) s.push_back(static_cast<char>('0' + x));
  return s;
}

namespace detail {

inline std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  while (exp--) r *= base;
  return r;
}

// Position of a vertex among the d^len vertices of its level.
inline std::size_t level_position(const VertexString& v) {
  std::size_t pos = 0;
  for (auto x : v.letters) pos = pos * v.arity + x;
  return pos;
}

}  // namespace detail

/// A finite permutation group of degree d used for vertex labels.
class LabelGroup {
 public:
  explicit LabelGroup(std::vector<Permutation> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) throw RangeError("label group needs at least one element");
  }

  static LabelGroup symmetric(std::size_t d) {
    std::vector<std::uint32_t> img(d);
    std::iota(img.begin(), img.end(), 0u);
    std::vector<Permutation> all;
    do {
      all.push_back(Permutation::from_zero_based(img));
    } while (std::next_permutation(img.begin(), img.end()));
    return LabelGroup(std::move(all));
  }

  static LabelGroup cyclic(std::size_t d) {
    std::vector<Permutation> all;
    for (std::size_t r = 0; r < d; ++r) {
      std::vector<std::uint32_t> img(d);
      for (std::size_t x = 0; x < d; ++x) img[x] = static_cast<std::uint32_t>((x + r) % d);
      all.push_back(Permutation::from_zero_based(std::move(img)));
    }
    return LabelGroup(std::move(all));
  }

  std::size_t degree() const noexcept { return elements_.front().degree(); }
  std::size_t order() const noexcept { return elements_.size(); }
  std::span<const Permutation> elements() const noexcept { return elements_; }

  template <class Rng>
  const Permutation& sample(Rng& rng) const {
    return elements_[uniform_below(rng, elements_.size())];
  }

 private:
  std::vector<Permutation> elements_;
};

class Portrait {
 public:
  Portrait() = default;

  static Portrait identity(std::size_t arity, std::size_t depth) {
    if (arity < 2 || arity > 255) throw RangeError("arity must be in 2..255");
    Portrait p;
    p.arity_ = arity;
    p.depth_ = depth;
    p.offsets_.resize(depth + 2);
    p.offsets_[0] = 0;
    for (std::size_t l = 0; l <= depth; ++l) {
      p.offsets_[l + 1] = p.offsets_[l] + detail::ipow(arity, l);
    }
    p.labels_.resize(p.internal_count() * arity);
    for (std::size_t v = 0; v < p.internal_count(); ++v) {
      for (std::size_t x = 0; x < arity; ++x) p.labels_[v * arity + x] = static_cast<std::uint8_t>(x);
    }
    return p;
  }

  std::size_t arity() const noexcept { return arity_; }
  std::size_t depth() const noexcept { return depth_; }
  /// Number of labelled vertices: (d^D - 1) / (d - 1).
  std::size_t internal_count() const noexcept { return offsets_[depth_]; }
  std::size_t level_offset(std::size_t level) const { return offsets_[level]; }

  std::size_t vertex_index(const VertexString& v) const {
    if (v.arity != arity_) throw ShapeError("vertex arity differs from portrait arity");
    if (v.size() >= depth_) throw DepthError("vertex is not above the truncation depth");
    return offsets_[v.size()] + detail::level_position(v);
  }

  /// Label at internal vertex index `idx`, as a 0-based image table.
  std::span<const std::uint8_t> label(std::size_t idx) const {
    return std::span<const std::uint8_t>(labels_).subspan(idx * arity_, arity_);
  }

  Permutation label_permutation(const VertexString& v) const {
    auto l = label(vertex_index(v));
    return Permutation::from_zero_based(std::vector<std::uint32_t>(l.begin(), l.end()));
  }

  void set_label(const VertexString& v, const Permutation& p) { set_label_at(vertex_index(v), p); }

  void set_label_at(std::size_t idx, const Permutation& p) {
    if (p.degree() != arity_) throw DegreeError("label degree differs from arity");
    if (idx >= internal_count()) throw DepthError("vertex index out of range");
    for (std::size_t x = 0; x < arity_; ++x) labels_[idx * arity_ + x] = static_cast<std::uint8_t>(p[x]);
  }

  bool is_identity() const noexcept {
    for (std::size_t v = 0; v < internal_count(); ++v) {
      for (std::size_t x = 0; x < arity_; ++x) {
        if (labels_[v * arity_ + x] != x) return false;
      }
    }
    return true;
  }

  /// The induced permutation of the d^D vertices at the truncation level,
  /// numbered by level position.  It determines the portrait.
  Permutation level_permutation() const {
    std::vector<std::uint32_t> img{0};
    for (std::size_t l = 0; l < depth_; ++l) {
      std::vector<std::uint32_t> next(img.size() * arity_);
      for (std::size_t pos = 0; pos < img.size(); ++pos) {
        auto lab = label(offsets_[l] + pos);
        for (std::size_t x = 0; x < arity_; ++x) {
          next[pos * arity_ + x] = static_cast<std::uint32_t>(img[pos] * arity_ + lab[x]);
        }
      }
      img = std::move(next);
    }
    return Permutation::from_zero_based(std::move(img));
  }

  friend bool operator==(const Portrait& a, const Portrait& b) {
    return a.arity_ == b.arity_ && a.depth_ == b.depth_ && a.labels_ == b.labels_;
  }

 private:
  friend Portrait compose(const Portrait&, const Portrait&);
  friend Portrait inverse(const Portrait&);

  std::size_t arity_ = 2;
  std::size_t depth_ = 0;
  std::vector<std::size_t> offsets_{0, 1};
  std::vector<std::uint8_t> labels_;
};

inline VertexString act(const Portrait& a, const VertexString& s) {
  if (s.arity != a.arity()) throw ShapeError("vertex arity differs from portrait arity");
  if (s.size() > a.depth()) throw DepthError("string deeper than the portrait");
  VertexString out{s.arity, std::vector<std::uint8_t>(s.size())};
  std::size_t pos = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto x = s.letters[i];
    out.letters[i] = a.label(a.level_offset(i) + pos)[x];
    pos = pos * a.arity() + x;
  }
  return out;
}

/// The product fg (apply f, then g).
inline Portrait compose(const Portrait& f, const Portrait& g) {
  if (f.arity_ != g.arity_ || f.depth_ != g.depth_) {
    throw ShapeError("portraits differ in arity or depth");
  }
  const std::size_t d = f.arity_;
  Portrait h = f;
  std::vector<std::size_t> img{0};
  for (std::size_t l = 0; l < f.depth_; ++l) {
    const std::size_t off = f.offsets_[l];
    std::vector<std::size_t> next(img.size() * d);
    for (std::size_t pos = 0; pos < img.size(); ++pos) {
      const std::uint8_t* fl = &f.labels_[(off + pos) * d];
      const std::uint8_t* gl = &g.labels_[(off + img[pos]) * d];
      std::uint8_t* hl = &h.labels_[(off + pos) * d];
      for (std::size_t x = 0; x < d; ++x) {
        hl[x] = gl[fl[x]];
        next[pos * d + x] = img[pos] * d + fl[x];
      }
    }
    img = std::move(next);
  }
  return h;
}

inline Portrait inverse(const Portrait& f) {
  const std::size_t d = f.arity_;
  Portrait h = f;
  std::vector<std::size_t> img{0};
  for (std::size_t l = 0; l < f.depth_; ++l) {
    const std::size_t off = f.offsets_[l];
    std::vector<std::size_t> next(img.size() * d);
    for (std::size_t pos = 0; pos < img.size(); ++pos) {
      const std::uint8_t* fl = &f.labels_[(off + pos) * d];
      std::uint8_t* hl = &h.labels_[(off + img[pos]) * d];
      for (std::size_t x = 0; x < d; ++x) {
        hl[fl[x]] = static_cast<std::uint8_t>(x);
        next[pos * d + x] = img[pos] * d + fl[x];
      }
    }
    img = std::move(next);
  }
  return h;
}

/// Haar-random element of the level-D truncation of the iterated wreath
/// product of `labels`: an independent uniform label at every vertex.
template <class Rng>
Portrait haar_sample(std::size_t d, std::size_t depth, Rng& rng, const LabelGroup& labels) {
  if (d < 2) throw RangeError("arity must be at least 2");
  if (depth < 1) throw RangeError("depth must be at least 1");
  if (labels.degree() != d) throw DegreeError("label group degree differs from arity");
  Portrait p = Portrait::identity(d, depth);
  for (std::size_t idx = 0; idx < p.internal_count(); ++idx) p.set_label_at(idx, labels.sample(rng));
  return p;
}

template <class Rng>
Portrait haar_sample(std::size_t d, std::size_t depth, Rng& rng) {
  return haar_sample(d, depth, rng, LabelGroup::symmetric(d));
}

/// A non-identity element of the rigid stabilizer of v: every label is
/// trivial except the one at v, which is a uniform non-identity permutation.
template <class Rng>
Portrait rigid_mover(const VertexString& v, std::size_t d, std::size_t depth, Rng& rng) {
  if (v.arity != d) throw ShapeError("vertex arity differs from requested arity");
  if (v.size() >= depth) throw DepthError("vertex must lie above the truncation depth");
  const auto group = LabelGroup::symmetric(d);
  Portrait p = Portrait::identity(d, depth);
  for (;;) {
    const Permutation& label = group.sample(rng);
    if (label.is_identity()) continue;
    p.set_label(v, label);
    return p;
  }
}

/// The element of the rigid stabilizer of the longest common prefix of x and
/// target that carries x to target with transpositions along the path of x.
inline Portrait rigid_transport(const VertexString& x, const VertexString& target, std::size_t depth) {
  if (x.arity != target.arity || x.size() != target.size()) {
    throw ShapeError("transport endpoints must share arity and length");
  }
  if (x.size() > depth) throw DepthError("string deeper than the portrait");
  Portrait p = Portrait::identity(x.arity, depth);
  VertexString at{x.arity, {}};
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x.letters[i] != target.letters[i]) {
      std::vector<std::uint32_t> img(x.arity);
      std::iota(img.begin(), img.end(), 0u);
      std::swap(img[x.letters[i]], img[target.letters[i]]);
      p.set_label(at, Permutation::from_zero_based(std::move(img)));
    }
    at.letters.push_back(x.letters[i]);
  }
  return p;
}

/// Identity on every vertex string of length <= depth.
inline bool is_identity_to_depth(const Portrait& p, std::size_t depth) {
  if (depth > p.depth()) throw DepthError("check depth exceeds portrait depth");
  for (std::size_t v = 0; v < p.level_offset(depth); ++v) {
    auto l = p.label(v);
    for (std::size_t x = 0; x < p.arity(); ++x) {
      if (l[x] != x) return false;
    }
  }
  return true;
}

/// A finite automaton whose states are tree automorphisms.
struct AutomatonTable {
  struct State {
    std::string name;
    Permutation label;                 // root permutation, degree = arity
    std::vector<std::size_t> children;  // one state per letter
  };

  std::size_t arity = 2;
  std::vector<State> states;

  std::size_t find(std::string_view name) const {
    for (std::size_t i = 0; i < states.size(); ++i) {
      if (states[i].name == name) return i;
    }
    throw NameError("no state named '" + std::string(name) + "'");
  }

  void validate() const {
    if (states.empty()) throw ShapeError("automaton has no states");
    for (const auto& s : states) {
      if (s.label.degree() != arity) throw DegreeError("state label degree differs from arity");
      if (s.children.size() != arity) throw ShapeError("state needs one child per letter");
      for (auto c : s.children) {
        if (c >= states.size()) throw ShapeError("child state reference out of range");
      }
    }
  }
};

class FiniteStateAut {
 public:
  FiniteStateAut(std::shared_ptr<const AutomatonTable> table, std::size_t state)
      : table_(std::move(table)), state_(state) {
    table_->validate();
    if (state_ >= table_->states.size()) throw ShapeError("root state out of range");
  }

  std::size_t arity() const noexcept { return table_->arity; }
  std::size_t state() const noexcept { return state_; }
  const std::string& name() const { return table_->states[state_].name; }
  const Permutation& root_label() const { return table_->states[state_].label; }
  const AutomatonTable& table() const noexcept { return *table_; }
  std::shared_ptr<const AutomatonTable> shared_table() const noexcept { return table_; }

  /// Same automaton, rooted at a different state.
  FiniteStateAut with_state(std::size_t s) const { return FiniteStateAut(table_, s); }

  friend bool operator==(const FiniteStateAut& a, const FiniteStateAut& b) {
    return a.table_ == b.table_ && a.state_ == b.state_;
  }

 private:
  std::shared_ptr<const AutomatonTable> table_;
  std::size_t state_;
};

inline VertexString act(const FiniteStateAut& a, const VertexString& s) {
  if (s.arity != a.arity()) throw ShapeError("vertex arity differs from automaton arity");
  const auto& t = a.table();
  VertexString out{s.arity, std::vector<std::uint8_t>(s.size())};
  std::size_t st = a.state();
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto x = s.letters[i];
    out.letters[i] = static_cast<std::uint8_t>(t.states[st].label[x]);
    st = t.states[st].children[x];
  }
  return out;
}

/// The restriction of a to the subtree below v.
inline FiniteStateAut section(const FiniteStateAut& a, const VertexString& v) {
  if (v.arity != a.arity()) throw ShapeError("vertex arity differs from automaton arity");
  std::size_t st = a.state();
  for (auto x : v.letters) st = a.table().states[st].children[x];
  return a.with_state(st);
}

inline Portrait to_portrait(const FiniteStateAut& a, std::size_t depth) {
  const std::size_t d = a.arity();
  const auto& t = a.table();
  Portrait p = Portrait::identity(d, depth);
  std::vector<std::size_t> states{a.state()};
  // Walk levels, tracking the state at every vertex in level-position order.
  for (std::size_t l = 0; l < depth; ++l) {
    std::vector<std::size_t> next;
    next.reserve(states.size() * d);
    for (std::size_t pos = 0; pos < states.size(); ++pos) {
      const auto& s = t.states[states[pos]];
      p.set_label_at(p.level_offset(l) + pos, s.label);
      for (auto c : s.children) next.push_back(c);
    }
    states = std::move(next);
  }
  return p;
}

inline bool is_identity_to_depth(const FiniteStateAut& a, std::size_t depth) {
  const auto& t = a.table();
  std::vector<bool> current(t.states.size(), false);
  current[a.state()] = true;
  for (std::size_t l = 0; l < depth; ++l) {
    std::vector<bool> next(t.states.size(), false);
    bool any = false;
    for (std::size_t s = 0; s < t.states.size(); ++s) {
      if (!current[s]) continue;
      if (!t.states[s].label.is_identity()) return false;
      for (auto c : t.states[s].children) next[c] = any = true;
    }
    if (next == current) return true;  // the reachable set is stable
    current = std::move(next);
    if (!any) return true;
  }
  return true;
}

/// The value at depth D of a word whose generator i is gens[i-1].
inline Portrait evaluate_portrait(const Word& w, std::span<const FiniteStateAut> gens, std::size_t depth) {
  if (gens.empty()) throw ArityError("no generators supplied");
  std::vector<Portrait> tuple;
  tuple.reserve(gens.size());
  for (const auto& g : gens) tuple.push_back(to_portrait(g, depth));
  return evaluate(w, std::span<const Portrait>(tuple), Portrait::identity(gens.front().arity(), depth),
                  [](const Portrait& a, const Portrait& b) { return compose(a, b); },
                  [](const Portrait& a) { return inverse(a); });
}

inline bool is_identity_to_depth(const Word& w, std::span<const FiniteStateAut> gens, std::size_t depth) {
  return evaluate_portrait(w, gens, depth).is_identity();
}

/// The first Grigorchuk group: a = swap, b = (a, c), c = (a, d), d = (1, b).
/// State "e" is the identity.
inline std::shared_ptr<const AutomatonTable> grigorchuk_automaton() {
  static const auto table = [] {
    auto t = std::make_shared<AutomatonTable>();
    t->arity = 2;
    const auto id = Permutation::identity(2);
    const auto swap = cycle(2, {1, 2});
    enum { a, b, c, d, e };
    t->states = {
        {"a", swap, {e, e}},
        {"b", id, {a, c}},
        {"c", id, {a, d}},
        {"d", id, {e, b}},
        {"e", id, {e, e}},
    };
    t->validate();
    return std::shared_ptr<const AutomatonTable>(std::move(t));
  }();
  return table;
}

inline FiniteStateAut grigorchuk_generator(std::string_view name) {
  if (name != "a" && name != "b" && name != "c" && name != "d") {
    throw NameError("unknown Grigorchuk generator '" + std::string(name) + "'");
  }
  auto table = grigorchuk_automaton();
  const std::size_t s = table->find(name);
  return FiniteStateAut(std::move(table), s);
}

inline std::vector<FiniteStateAut> grigorchuk_generators() {
  return {grigorchuk_generator("a"), grigorchuk_generator("b"), grigorchuk_generator("c"),
          grigorchuk_generator("d")};
}

namespace detail {

// True when p is trivial at every labelled vertex outside the subtree at v
// and non-trivial at some labelled vertex inside it.
inline bool supported_exactly_below(const Portrait& p, const VertexString& v) {
  const std::size_t d = p.arity();
  const std::size_t vpos = level_position(v);
  bool inside_moves = false;
  for (std::size_t l = 0; l < p.depth(); ++l) {
    const std::size_t width = ipow(d, l);
    for (std::size_t pos = 0; pos < width; ++pos) {
      const bool inside = l >= v.size() && pos / ipow(d, l - v.size()) == vpos;
      auto lab = p.label(p.level_offset(l) + pos);
      bool trivial = true;
      for (std::size_t x = 0; x < d; ++x) trivial = trivial && lab[x] == x;
      if (trivial) continue;
      if (!inside) return false;
      inside_moves = true;
    }
  }
  return inside_moves;
}

}  // namespace detail

/// Words of length <= max_length in the generators (free reduction only)
/// whose depth-D action is supported on the subtree at v and non-trivial
/// there, in length-lexicographic order.
inline std::vector<Word> rist_search(std::span<const FiniteStateAut> gens, const VertexString& v,
                                     std::size_t max_length, std::size_t depth) {
  if (v.is_root()) throw RangeError("rigid stabilizer search needs a non-root vertex");
  if (max_length < 1) throw RangeError("max word length must be at least 1");
  if (depth <= v.size()) throw DepthError("check depth must exceed the vertex length");
  if (gens.empty()) throw ArityError("no generators supplied");
  std::vector<Portrait> values;
  for (const auto& g : gens) {
    if (g.arity() != v.arity) throw ShapeError("generator arity differs from vertex arity");
    values.push_back(to_portrait(g, depth));
  }
  std::vector<Portrait> inverses;
  for (const auto& p : values) inverses.push_back(inverse(p));

  std::vector<Word> found;
  // Length-lex order equals breadth-first order over the prefix tree.
  struct Node {
    std::vector<Letter> letters;
    Portrait value;
  };
  std::vector<Node> layer{{{}, Portrait::identity(v.arity, depth)}};
  for (std::size_t len = 1; len <= max_length; ++len) {
    std::vector<Node> next;
    for (const auto& node : layer) {
      for (std::uint32_t g = 1; g <= gens.size(); ++g) {
        for (std::int8_t sign : {std::int8_t{1}, std::int8_t{-1}}) {
          Letter l{g, sign};
          if (!node.letters.empty() && node.letters.back().cancels(l)) continue;
          Node child{node.letters, compose(node.value, sign > 0 ? values[g - 1] : inverses[g - 1])};
          child.letters.push_back(l);
          if (detail::supported_exactly_below(child.value, v)) {
            found.push_back(reduce(child.letters, gens.size()));
          }
          if (len < max_length) next.push_back(std::move(child));
        }
      }
    }
    layer = std::move(next);
  }
  return found;
}

}  // namespace lawless
