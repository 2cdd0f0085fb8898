#pragma once

// Experiment runner behind the `lawless` executable.  Argument parsing lives
// in tools/lawless.cpp; everything here works on a parsed RunConfig so tests
// can drive it in-process.
//
// Exit status: 0 when nothing failed, 1 when a row failed or an experiment
// raised, 2 for usage errors and malformed input.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "actions.hpp"
#include "errors.hpp"
#include "json_io.hpp"
#include "montecarlo.hpp"
#include "perm.hpp"
#include "separation.hpp"
#include "thompson.hpp"
#include "trees.hpp"
#include "words.hpp"

namespace lawless::cli {

enum ExitCode : int { kOk = 0, kFailed = 1, kUsage = 2 };

class UsageError : public Error {
 public:
  using Error::Error;
};

/// `alt:k`, `sym:k`, `tree:d,D`, `grig` or `thompson`.
struct GroupSpec {
  enum class Kind { alt, sym, tree, grig, thompson } kind = Kind::alt;
  std::size_t k = 0;      // alt, sym
  std::size_t arity = 0;  // tree
  std::size_t depth = 0;  // tree
  std::string text;
};

inline std::size_t parse_count(std::string_view s, std::string_view what) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string_view::npos || s.size() > 9) {
    throw UsageError("expected a non-negative integer for " + std::string(what) + ", got '" +
                     std::string(s) + "'");
  }
  return static_cast<std::size_t>(std::stoul(std::string(s)));
}

inline GroupSpec parse_group_spec(std::string_view text) {
  GroupSpec g;
  g.text = std::string(text);
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  if (head == "grig" && colon == std::string_view::npos) {
    g.kind = GroupSpec::Kind::grig;
  } else if (head == "thompson" && colon == std::string_view::npos) {
    g.kind = GroupSpec::Kind::thompson;
  } else if ((head == "alt" || head == "sym") && colon != std::string_view::npos) {
    g.kind = head == "alt" ? GroupSpec::Kind::alt : GroupSpec::Kind::sym;
    g.k = parse_count(rest, "the degree");
    if (g.k < (g.kind == GroupSpec::Kind::alt ? 3u : 2u)) throw UsageError("degree too small in '" + g.text + "'");
  } else if (head == "tree" && colon != std::string_view::npos) {
    g.kind = GroupSpec::Kind::tree;
    const auto comma = rest.find(',');
    if (comma == std::string_view::npos) throw UsageError("tree spec is tree:d,D");
    g.arity = parse_count(rest.substr(0, comma), "the arity");
    g.depth = parse_count(rest.substr(comma + 1), "the depth");
    if (g.arity < 2 || g.arity > 10 || g.depth < 1) throw UsageError("tree needs 2 <= d <= 10 and D >= 1");
  } else {
    throw UsageError("unknown group spec '" + g.text + "' (use alt:k, sym:k, tree:d,D, grig, thompson)");
  }
  return g;
}

inline bool is_permutation_group(const GroupSpec& g) {
  return g.kind == GroupSpec::Kind::alt || g.kind == GroupSpec::Kind::sym;
}

inline StandardKind standard_kind(const GroupSpec& g) {
  return g.kind == GroupSpec::Kind::alt ? StandardKind::alternating : StandardKind::symmetric;
}

using AnyAction = std::variant<PermAction, TreeAction, ThompsonAction>;

inline AnyAction make_action(const GroupSpec& g) {
  switch (g.kind) {
    case GroupSpec::Kind::alt:
    case GroupSpec::Kind::sym:
      return PermAction::standard(standard_kind(g), g.k);
    case GroupSpec::Kind::tree:
      return TreeAction(g.arity, g.depth);
    case GroupSpec::Kind::thompson:
      return ThompsonAction();
    case GroupSpec::Kind::grig:
      break;
  }
  throw UsageError("'grig' has no separating-action adapter; use tree:d,D for witnesses");
}

inline Point parse_point(const PermAction& a, const std::optional<std::string>& s) {
  if (!s) return 1;
  const auto x = parse_count(*s, "the start point");
  if (x < 1 || x > a.degree()) throw UsageError("start point out of range");
  return x;
}

inline VertexString parse_point(const TreeAction& a, const std::optional<std::string>& s) {
  if (!s) return VertexString{a.arity(), std::vector<std::uint8_t>(a.depth(), 0)};
  auto v = parse_vertex(*s, a.arity());
  if (v.size() != a.depth()) throw UsageError("start point must be a string of length " + std::to_string(a.depth()));
  return v;
}

inline Dyadic parse_point(const ThompsonAction&, const std::optional<std::string>& s) {
  if (!s) return Dyadic(Dyadic::Int(1), 1);
  return parse_dyadic(*s);
}

struct RunConfig {
  std::string subcommand;
  std::optional<std::string> group;
  std::optional<std::string> word;
  std::optional<std::string> point;
  std::optional<std::string> vertex;
  std::vector<std::size_t> degrees;
  std::vector<std::size_t> depths;
  std::uint64_t samples = 10'000;
  std::optional<std::uint64_t> seed;
  double confidence = 0.99;
  unsigned workers = 1;
  std::optional<std::size_t> a;        // bound-check: separation order override
  std::optional<std::size_t> n;        // separation-order
  std::optional<std::uint64_t> trials;  // separation-order, sampled mode
  std::size_t arity = 2;               // freeness
  std::size_t rank = 2;                // freeness
  std::size_t length = 6;              // freeness, rist-search
  std::size_t depth = 10;              // rist-search
  std::string labels = "sym";          // freeness
  std::uint64_t budget = 10'000'000;   // exact-prob, separation-order
  std::optional<std::string> out;
  std::optional<std::string> input;    // verify
};

/// --seed, else LAWLESS_SEED, else 0.
inline std::uint64_t resolve_seed(const RunConfig& c) {
  if (c.seed) return *c.seed;
  if (const char* env = std::getenv("LAWLESS_SEED"); env && *env) {
    const std::string s(env);
    if (s.find_first_not_of("0123456789") != std::string::npos || s.size() > 19) {
      throw UsageError("LAWLESS_SEED must be a non-negative integer");
    }
    return std::stoull(s);
  }
  return 0;
}

/// The configuration echo written into JSON outputs.  Workers are left out:
/// they never change results.
inline Json config_echo(const RunConfig& c, std::uint64_t seed) {
  Json j{{"subcommand", c.subcommand}};
  if (c.group) j["group"] = *c.group;
  if (c.word) j["word"] = *c.word;
  if (c.point) j["point"] = *c.point;
  if (c.vertex) j["vertex"] = *c.vertex;
  if (!c.degrees.empty()) j["degrees"] = c.degrees;
  if (!c.depths.empty()) j["depths"] = c.depths;
  j["samples"] = c.samples;
  j["seed"] = seed;
  j["confidence"] = format_fixed(c.confidence, 4);
  if (c.a) j["a"] = *c.a;
  if (c.n) j["n"] = *c.n;
  if (c.trials) j["trials"] = *c.trials;
  if (c.subcommand == "freeness") {
    j["arity"] = c.arity;
    j["rank"] = c.rank;
    j["length"] = c.length;
    j["labels"] = c.labels;
  }
  if (c.subcommand == "rist-search") {
    j["length"] = c.length;
    j["depth"] = c.depth;
  }
  return j;
}

struct RunReport {
  Json config;
  std::vector<ExperimentTable> tables;
  std::optional<Json> certificate;
  std::string summary;
  double wall_seconds = 0;
  int exit_status = kOk;
};

struct ExperimentInfo {
  const char* name;
  const char* description;
};

inline constexpr ExperimentInfo kExperiments[] = {
    {"bound-check", "estimate P(w(g) != 1) in A_k or S_k and compare with (1 - n/a)^n for separation order (n, a)"},
    {"witness", "build a certificate that w is not a law in a separating action (alt, sym, tree, thompson)"},
    {"verify", "re-check a certificate from scratch: recomputed trajectory, distinct points, moved start point"},
    {"alter-sweep", "run bound-check for w over A_k across a list of degrees k"},
    {"freeness", "fraction of Haar-random tuples of tree automorphisms with a short relation, per truncation depth"},
    {"separation-order", "largest a with every n-point stabilizer having all outside orbits of size >= a"},
    {"exact-prob", "exact P(w(g) != 1) by enumerating all tuples of a small group"},
    {"rist-search", "short words in the Grigorchuk generators supported exactly below a vertex"},
};

inline std::string list_experiments() {
  std::ostringstream out;
  for (const auto& e : kExperiments) {
    out << e.name;
    for (std::size_t i = std::string_view(e.name).size(); i < 18; ++i) out << ' ';
    out << e.description << '\n';
  }
  return out.str();
}

inline std::string format_table(const ExperimentTable& t) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header;
  for (const auto& p : t.param_names) header.push_back(p);
  for (const char* h : {"samples", "successes", "point", "ci_low", "ci_high", "bound", "verdict"}) header.emplace_back(h);
  cells.push_back(header);
  for (const auto& r : t.rows) {
    std::vector<std::string> line;
    for (const auto& name : t.param_names) {
      std::string v;
      for (const auto& [k, val] : r.params) {
        if (k == name) v = val;
      }
      line.push_back(v);
    }
    if (r.estimate) {
      const auto& e = *r.estimate;
      line.push_back(std::to_string(e.samples));
      line.push_back(std::to_string(e.successes));
      line.push_back(format_fixed(e.point()));
      line.push_back(format_fixed(e.ci_low));
      line.push_back(format_fixed(e.ci_high));
    } else {
      line.insert(line.end(), 5, "-");
    }
    line.push_back(r.bound ? r.bound->str() : "-");
    line.push_back(to_string(r.verdict) + (r.note.empty() ? std::string() : " (" + r.note + ")"));
    cells.push_back(std::move(line));
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& line : cells) {
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  }
  std::ostringstream out;
  out << t.experiment << "  seed=" << t.seed << "  confidence=" << format_fixed(t.confidence, 4)
      << "  ci=" << t.ci_method << '\n';
  for (const auto& line : cells) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      out << line[i];
      if (i + 1 < line.size()) out << std::string(width[i] - line[i].size() + 2, ' ');
    }
    out << '\n';
  }
  return out.str();
}

namespace detail {

inline Word parse_word_arg(const std::optional<std::string>& w) {
  if (!w) throw UsageError("--word is required");
  try {
    return parse_word(*w);
  } catch (const ParseError& e) {
    throw UsageError(std::string("bad word: ") + e.what());
  }
}

inline GroupSpec group_arg(const std::optional<std::string>& g, const char* flag = "--group") {
  if (!g) throw UsageError(std::string(flag) + " is required");
  return parse_group_spec(*g);
}

inline void require_perm_group(const GroupSpec& g) {
  if (!is_permutation_group(g)) throw UsageError("this experiment needs alt:k or sym:k, got '" + g.text + "'");
}

inline void require_confidence(double c) {
  if (!(c > 0 && c < 1)) throw UsageError("--confidence must lie strictly between 0 and 1");
}

inline RunReport run_bound_check(const RunConfig& c, std::uint64_t seed) {
  const GroupSpec g = group_arg(c.group);
  require_perm_group(g);
  const Word w = parse_word_arg(c.word);
  if (w.empty()) throw UsageError("the empty word is a law in every group");
  require_confidence(c.confidence);
  if (c.samples < 1) throw UsageError("--samples must be positive");
  if (w.size() >= g.k) throw UsageError("word length must be smaller than the degree");
  const std::size_t a = c.a.value_or(known_separation_order(standard_kind(g), g.k, w.size()));
  if (a < 1) throw UsageError("--a must be positive");
  const Bsgs chain = build_bsgs(standard_group(standard_kind(g), g.k));
  RunReport r;
  r.tables.push_back(bound_check(chain, g.text, w, a, c.samples, c.confidence, seed, c.workers));
  return r;
}

inline RunReport run_alter_sweep(const RunConfig& c, std::uint64_t seed) {
  const Word w = parse_word_arg(c.word);
  if (w.empty()) throw UsageError("the empty word is a law in every group");
  if (c.degrees.empty()) throw UsageError("--degrees is required");
  require_confidence(c.confidence);
  if (c.samples < 1) throw UsageError("--samples must be positive");
  RunReport r;
  r.tables.push_back(alter_sweep(w, c.degrees, c.samples, seed, c.confidence, c.workers));
  return r;
}

inline RunReport run_freeness(const RunConfig& c, std::uint64_t seed) {
  if (c.depths.empty()) throw UsageError("--depths is required");
  if (c.arity < 2 || c.arity > 10) throw UsageError("--arity must be between 2 and 10");
  if (c.rank < 1 || c.length < 1 || c.samples < 1) throw UsageError("--rank, --length and --samples must be positive");
  require_confidence(c.confidence);
  FreenessConfig f;
  f.arity = c.arity;
  f.depths = c.depths;
  f.rank = c.rank;
  f.max_length = c.length;
  f.samples = c.samples;
  f.seed = seed;
  f.confidence = c.confidence;
  f.workers = c.workers;
  if (c.labels == "cyclic") {
    f.labels = LabelGroup::cyclic(c.arity);
  } else if (c.labels != "sym") {
    throw UsageError("--labels must be sym or cyclic");
  }
  RunReport r;
  r.tables.push_back(freeness_experiment(f));
  const auto decay = decay_check(r.tables.back());
  r.summary = std::string("decay: non-increasing=") + (decay.non_increasing ? "yes" : "no") +
              "  last-below-first=" + (decay.last_below_first ? "yes" : "no") + "\n";
  return r;
}

inline RunReport run_separation_order(const RunConfig& c, std::uint64_t seed) {
  const GroupSpec g = group_arg(c.group);
  require_perm_group(g);
  if (!c.n) throw UsageError("--n is required");
  if (*c.n >= g.k) throw UsageError("--n must be smaller than the degree");
  const Bsgs chain = build_bsgs(standard_group(standard_kind(g), g.k));
  const auto mode = c.trials ? SeparationMode::sampled(*c.trials, seed)
                             : SeparationMode::exact(static_cast<std::size_t>(std::min<std::uint64_t>(c.budget, 200'000)));
  const auto rep = separation_order(chain, *c.n, mode);
  std::ostringstream out;
  out << "separation-order  group=" << g.text << "  n=" << *c.n << "\n"
      << "a=" << rep.a << (rep.exact ? "  (exact)" : "  (upper bound from sampling)") << "  sets=" << rep.sets_examined
      << "  worst-set={";
  for (std::size_t i = 0; i < rep.worst_set.size(); ++i) out << (i ? "," : "") << rep.worst_set[i];
  out << "}\n";
  RunReport r;
  r.summary = out.str();
  return r;
}

inline RunReport run_exact_prob(const RunConfig& c) {
  const GroupSpec g = group_arg(c.group);
  require_perm_group(g);
  const Word w = parse_word_arg(c.word);
  if (w.empty()) throw UsageError("the empty word is a law in every group");
  const Bsgs chain = build_bsgs(standard_group(standard_kind(g), g.k));
  const Rational p = exact_prob_small(chain, w, c.budget);
  RunReport r;
  r.summary = "exact-prob  group=" + g.text + "  word=" + to_string(w) + "\nP(w != 1) = " + p.str() + " = " +
              format_fixed(p.convert_to<double>()) + "\n";
  return r;
}

inline RunReport run_rist_search(const RunConfig& c) {
  const GroupSpec g = group_arg(c.group);
  if (g.kind != GroupSpec::Kind::grig) throw UsageError("rist-search supports --group grig only");
  if (!c.vertex) throw UsageError("--vertex is required");
  VertexString v;
  try {
    v = parse_vertex(*c.vertex, 2);
  } catch (const ParseError& e) {
    throw UsageError(std::string("bad vertex: ") + e.what());
  }
  if (v.is_root()) throw UsageError("--vertex must not be the root");
  if (c.depth <= v.size()) throw UsageError("--depth must exceed the vertex length");
  const auto gens = grigorchuk_generators();
  const auto found = rist_search(gens, v, c.length, c.depth);
  std::ostringstream out;
  out << "rist-search  group=grig  vertex=" << to_string(v) << "  L=" << c.length << "  D=" << c.depth << "\n"
      << found.size() << " word(s)";
  for (std::size_t i = 0; i < found.size(); ++i) out << (i ? ", " : ": ") << to_string(found[i]);
  out << "\n";
  RunReport r;
  r.summary = out.str();
  return r;
}

inline RunReport run_witness(const RunConfig& c) {
  const GroupSpec g = group_arg(c.group, "--action");
  const Word w = parse_word_arg(c.word);
  const AnyAction action = make_action(g);
  return std::visit(
      [&](const auto& act) {
        const auto x0 = [&] {
          try {
            return parse_point(act, c.point);
          } catch (const ParseError& e) {
            throw UsageError(std::string("bad start point: ") + e.what());
          }
        }();
        const auto cert = certify_not_law(w, act, x0);
        RunReport r;
        r.certificate = certificate_to_json(cert, act);
        std::ostringstream out;
        out << "witness  action=" << act.spec() << "  word=" << to_string(w) << "\n"
            << "trajectory of " << cert.trace.trajectory.size() << " distinct points, "
            << cert.trace.modifications.size() << " modification(s); verified\n";
        r.summary = out.str();
        return r;
      },
      action);
}

}  // namespace detail

/// Runs one experiment.  Throws UsageError for bad configurations and lets
/// other lawless errors propagate.
inline RunReport run(const RunConfig& c) {
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t seed = resolve_seed(c);
  RunReport r;
  const auto& s = c.subcommand;
  if (s == "list") {
    r.summary = list_experiments();
  } else if (s == "bound-check") {
    r = detail::run_bound_check(c, seed);
  } else if (s == "alter-sweep") {
    r = detail::run_alter_sweep(c, seed);
  } else if (s == "freeness") {
    r = detail::run_freeness(c, seed);
  } else if (s == "separation-order") {
    r = detail::run_separation_order(c, seed);
  } else if (s == "exact-prob") {
    r = detail::run_exact_prob(c);
  } else if (s == "rist-search") {
    r = detail::run_rist_search(c);
  } else if (s == "witness") {
    r = detail::run_witness(c);
  } else {
    throw UsageError("unknown subcommand '" + s + "'");
  }
  r.config = config_echo(c, seed);
  for (const auto& t : r.tables) {
    if (t.any_fail()) r.exit_status = kFailed;
  }
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

/// JSON for a run with tables: the config echo plus each table.
inline Json report_json(const RunReport& r) {
  Json tables = Json::array();
  for (const auto& t : r.tables) tables.push_back(table_to_json(t));
  return Json{{"config", r.config}, {"tables", std::move(tables)}};
}

struct VerifyOutcome {
  int exit_status = kOk;
  std::string message;
};

/// Re-verifies a certificate document.  Malformed input is exit 2, a failed
/// check is exit 1.
inline VerifyOutcome verify_certificate_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    return {kUsage, std::string("malformed certificate JSON: ") + e.what()};
  }
  try {
    if (!j.is_object() || !j.contains("action")) return {kUsage, "certificate has no 'action' field"};
    const GroupSpec g = parse_group_spec(lawless::detail::get_as<std::string>(j["action"], "action"));
    const AnyAction action = make_action(g);
    return std::visit(
        [&](const auto& act) -> VerifyOutcome {
          const auto cert = certificate_from_json(j, act);
          try {
            if (auto res = verify_certificate(cert, act); !res) return {kFailed, "verification failed: " + res.reason};
          } catch (const Error& e) {
            return {kFailed, std::string("verification failed: ") + e.what()};
          }
          return {kOk, "certificate verified: " + act.spec() + ", word " + to_string(cert.trace.word)};
        },
        action);
  } catch (const Error& e) {
    return {kUsage, std::string("malformed certificate: ") + e.what()};
  }
}

inline VerifyOutcome verify_certificate_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {kUsage, "cannot read " + path};
  std::ostringstream buf;
  buf << in.rdbuf();
  return verify_certificate_text(buf.str());
}

}  // namespace lawless::cli
