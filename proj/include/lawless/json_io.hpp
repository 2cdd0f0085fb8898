#pragma once

// JSON forms of portraits, automata, PL maps, witness certificates and
// experiment tables.  Decoders throw ParseError on any structural problem,
// including nlohmann's own type errors.

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "actions.hpp"
#include "errors.hpp"
#include "montecarlo.hpp"
#include "perm.hpp"
#include "separation.hpp"
#include "thompson.hpp"
#include "trees.hpp"
#include "words.hpp"

namespace lawless {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

namespace detail {

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw ParseError("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

template <class T>
T get_as(const Json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(std::string("field '") + what + "' has the wrong type");
  }
}

// Runs a decoder and turns library type errors into ParseError.
template <class F>
auto decoding(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace detail

// Portraits: {"arity": d, "depth": D, "labels": {"<vertex>": "<image list>"}}.
// Vertices with identity labels are omitted.

inline Json portrait_to_json(const Portrait& p) {
  Json labels = Json::object();
  VertexString v{p.arity(), {}};
  for (std::size_t level = 0; level < p.depth(); ++level) {
    const std::size_t width = detail::ipow(p.arity(), level);
    v.letters.assign(level, 0);
    for (std::size_t pos = 0; pos < width; ++pos) {
      const Permutation label = p.label_permutation(v);
      if (!label.is_identity()) labels[to_string(v)] = format_images(label);
      for (std::size_t i = level; i-- > 0;) {
        if (++v.letters[i] < p.arity()) break;
        v.letters[i] = 0;
      }
    }
  }
  return Json{{"arity", p.arity()}, {"depth", p.depth()}, {"labels", std::move(labels)}};
}

inline Portrait portrait_from_json(const Json& j) {
  return detail::decoding([&] {
    const auto arity = detail::get_as<std::size_t>(detail::field(j, "arity"), "arity");
    const auto depth = detail::get_as<std::size_t>(detail::field(j, "depth"), "depth");
    if (arity < 2 || arity > 10) throw ParseError("portrait arity must be between 2 and 10");
    Portrait p = Portrait::identity(arity, depth);
    const Json& labels = detail::field(j, "labels");
    if (!labels.is_object()) throw ParseError("'labels' must be an object");
    for (const auto& [key, value] : labels.items()) {
      const VertexString v = parse_vertex(key, arity);
      if (v.size() >= depth) throw ParseError("label at '" + key + "' is at or below the leaves");
      const Permutation label = parse_permutation(detail::get_as<std::string>(value, "labels"), arity);
      if (label.degree() != arity) throw ParseError("label at '" + key + "' has the wrong degree");
      p.set_label(v, label);
    }
    return p;
  });
}

// Automata: {"arity": d, "root": "<state>", "states": [{"name", "label",
// "children": [...]}]}, children by name.

inline Json automaton_to_json(const FiniteStateAut& a) {
  const auto& t = a.table();
  Json states = Json::array();
  for (const auto& s : t.states) {
    Json children = Json::array();
    for (auto c : s.children) children.push_back(t.states[c].name);
    states.push_back(Json{{"name", s.name}, {"label", format_images(s.label)}, {"children", children}});
  }
  return Json{{"arity", t.arity}, {"root", a.name()}, {"states", std::move(states)}};
}

inline FiniteStateAut automaton_from_json(const Json& j) {
  return detail::decoding([&] {
    auto table = std::make_shared<AutomatonTable>();
    table->arity = detail::get_as<std::size_t>(detail::field(j, "arity"), "arity");
    const Json& states = detail::field(j, "states");
    if (!states.is_array()) throw ParseError("'states' must be an array");
    for (const auto& s : states) {
      table->states.push_back({detail::get_as<std::string>(detail::field(s, "name"), "name"),
                               parse_permutation(detail::get_as<std::string>(detail::field(s, "label"), "label"),
                                                 table->arity),
                               {}});
    }
    for (std::size_t i = 0; i < states.size(); ++i) {
      for (const auto& c : detail::field(states[i], "children")) {
        table->states[i].children.push_back(table->find(detail::get_as<std::string>(c, "children")));
      }
    }
    const auto root = table->find(detail::get_as<std::string>(detail::field(j, "root"), "root"));
    return FiniteStateAut(std::move(table), root);
  });
}

// PL maps: {"breakpoints": [["p/2^e", "p/2^e"], ...]}.

inline Json plmap_to_json(const PLMap& f) {
  Json pts = Json::array();
  for (const auto& b : f.breakpoints()) pts.push_back(Json::array({to_string(b.in), to_string(b.out)}));
  return Json{{"breakpoints", std::move(pts)}};
}

inline PLMap plmap_from_json(const Json& j) {
  return detail::decoding([&] {
    const Json& pts = detail::field(j, "breakpoints");
    if (!pts.is_array()) throw ParseError("'breakpoints' must be an array");
    std::vector<Breakpoint> bps;
    for (const auto& p : pts) {
      if (!p.is_array() || p.size() != 2) throw ParseError("each breakpoint is a pair");
      bps.push_back({parse_dyadic(detail::get_as<std::string>(p[0], "breakpoints")),
                     parse_dyadic(detail::get_as<std::string>(p[1], "breakpoints"))});
    }
    return PLMap::make(std::move(bps));
  });
}

/// Element and point formats per action.
template <class A>
struct ActionCodec;

template <>
struct ActionCodec<PermAction> {
  static Json element(const PermAction&, const Permutation& g) { return format_images(g); }
  static Permutation element(const PermAction& a, const Json& j) {
    auto g = parse_permutation(detail::get_as<std::string>(j, "element"), a.degree());
    if (g.degree() != a.degree()) throw ParseError("permutation degree differs from the action's");
    return g;
  }
  static Json point(const PermAction&, Point x) { return x; }
  static Point point(const PermAction& a, const Json& j) {
    const auto x = detail::get_as<std::size_t>(j, "point");
    if (x < 1 || x > a.degree()) throw ParseError("point " + std::to_string(x) + " out of range");
    return x;
  }
};

template <>
struct ActionCodec<TreeAction> {
  static Json element(const TreeAction&, const Portrait& g) { return portrait_to_json(g); }
  static Portrait element(const TreeAction& a, const Json& j) {
    auto p = portrait_from_json(j);
    if (p.arity() != a.arity() || p.depth() != a.depth()) {
      throw ParseError("portrait shape differs from the action's tree");
    }
    return p;
  }
  static Json point(const TreeAction&, const VertexString& x) { return to_string(x); }
  static VertexString point(const TreeAction& a, const Json& j) {
    auto v = parse_vertex(detail::get_as<std::string>(j, "point"), a.arity());
    if (v.size() != a.depth()) throw ParseError("vertex string has the wrong length");
    return v;
  }
};

template <>
struct ActionCodec<ThompsonAction> {
  static Json element(const ThompsonAction&, const PLMap& g) { return plmap_to_json(g); }
  static PLMap element(const ThompsonAction&, const Json& j) { return plmap_from_json(j); }
  static Json point(const ThompsonAction&, const Dyadic& x) { return to_string(x); }
  static Dyadic point(const ThompsonAction&, const Json& j) {
    auto x = parse_dyadic(detail::get_as<std::string>(j, "point"));
    if (x < Dyadic(0) || Dyadic(1) < x) throw ParseError("point outside [0,1]");
    return x;
  }
};

template <class A>
Json certificate_to_json(const CertificateFor<A>& cert, const A& action) {
  using Codec = ActionCodec<A>;
  const auto& t = cert.trace;
  Json tuple = Json::array();
  for (const auto& g : t.tuple) tuple.push_back(Codec::element(action, g));
  Json traj = Json::array();
  for (const auto& x : t.trajectory) traj.push_back(Codec::point(action, x));
  Json mods = Json::array();
  for (const auto& m : t.modifications) {
    Json fixed = Json::array();
    for (const auto& y : m.fixed_points) fixed.push_back(Codec::point(action, y));
    mods.push_back(Json{{"step", m.step},
                        {"collided_with", m.collided_with},
                        {"index_set", m.index_set},
                        {"fixed_points", std::move(fixed)},
                        {"mover", Codec::element(action, m.mover)},
                        {"side", m.side == SpliceSide::right ? "right" : "left"},
                        {"moved_to", Codec::point(action, m.moved_to)}});
  }
  return Json{{"kind", "lawless-certificate"},
              {"version", kVersion},
              {"action", action.spec()},
              {"word", to_string(t.word)},
              {"rank", t.word.rank()},
              {"tuple", std::move(tuple)},
              {"trajectory", std::move(traj)},
              {"final_point", Codec::point(action, cert.final_point)},
              {"modifications", std::move(mods)}};
}

/// Decodes a certificate for the given action.  Only the word, tuple,
/// trajectory and final point matter for verification; the audit log is
/// read back as recorded.
template <class A>
CertificateFor<A> certificate_from_json(const Json& j, const A& action) {
  using Codec = ActionCodec<A>;
  return detail::decoding([&] {
    CertificateFor<A> cert{};
    auto& t = cert.trace;
    const auto rank = detail::get_as<std::size_t>(detail::field(j, "rank"), "rank");
    const auto word = parse_word(detail::get_as<std::string>(detail::field(j, "word"), "word"));
    t.word = reduce(word.letters(), rank);
    for (const auto& g : detail::field(j, "tuple")) t.tuple.push_back(Codec::element(action, g));
    for (const auto& x : detail::field(j, "trajectory")) t.trajectory.push_back(Codec::point(action, x));
    cert.final_point = Codec::point(action, detail::field(j, "final_point"));
    for (const auto& m : detail::field(j, "modifications")) {
      Modification<typename A::Element, typename A::Point> mod{
          detail::get_as<std::size_t>(detail::field(m, "step"), "step"),
          detail::get_as<std::size_t>(detail::field(m, "collided_with"), "collided_with"),
          detail::get_as<std::vector<std::size_t>>(detail::field(m, "index_set"), "index_set"),
          {},
          Codec::element(action, detail::field(m, "mover")),
          detail::get_as<std::string>(detail::field(m, "side"), "side") == "left" ? SpliceSide::left
                                                                                  : SpliceSide::right,
          Codec::point(action, detail::field(m, "moved_to"))};
      for (const auto& y : detail::field(m, "fixed_points")) mod.fixed_points.push_back(Codec::point(action, y));
      t.modifications.push_back(std::move(mod));
    }
    return cert;
  });
}

/// Table JSON: a metadata block plus one object per row.  Bounds appear both
/// as a decimal and as an exact fraction.
inline Json table_to_json(const ExperimentTable& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    Json params = Json::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    Json row{{"params", std::move(params)}};
    if (r.estimate) {
      const auto& e = *r.estimate;
      row["samples"] = e.samples;
      row["successes"] = e.successes;
      row["point"] = format_fixed(e.point());
      row["ci_low"] = format_fixed(e.ci_low);
      row["ci_high"] = format_fixed(e.ci_high);
    }
    if (r.bound) {
      row["bound"] = format_fixed(r.bound->convert_to<double>());
      row["bound_exact"] = r.bound->str();
    }
    row["verdict"] = to_string(r.verdict);
    if (!r.note.empty()) row["note"] = r.note;
    row["seed"] = t.seed;
    rows.push_back(std::move(row));
  }
  return Json{{"metadata",
               {{"experiment", t.experiment},
                {"version", kVersion},
                {"seed", t.seed},
                {"samples", t.samples},
                {"confidence", format_fixed(t.confidence, 4)},
                {"ci_method", t.ci_method},
                {"params", t.param_names}}},
              {"rows", std::move(rows)}};
}

}  // namespace lawless
