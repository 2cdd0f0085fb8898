#pragma once

// Probability estimates for word maps.
//
// Every estimator here is a count of independent Bernoulli trials.  Trial i
// draws its randomness from substream(row_seed, i) and nothing else, so the
// count is the same for any number of workers and any schedule.  Intervals
// are two-sided Hoeffding bounds: radius sqrt(ln(2/(1-confidence)) / (2N)).

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "perm.hpp"
#include "random.hpp"
#include "trees.hpp"
#include "words.hpp"

namespace lawless {

using Rational = boost::multiprecision::cpp_rational;

/// The finite-permutation-group lower bound max(0, 1 - n/a)^n on the
/// probability that a word of length n is not satisfied.
inline Rational finperm_bound(std::size_t n, std::size_t a) {
  if (n < 1 || a < 1) throw RangeError("finperm_bound needs n >= 1 and a >= 1");
  if (n >= a) return Rational(0);
  const Rational base(BigInt(a - n), BigInt(a));
  Rational r = 1;
  for (std::size_t i = 0; i < n; ++i) r *= base;
  return r;
}

struct Estimate {
  std::uint64_t successes = 0;
  std::uint64_t samples = 0;
  double confidence = 0.99;
  std::uint64_t seed = 0;
  double ci_low = 0;
  double ci_high = 1;

  double point() const {
    return samples ? static_cast<double>(successes) / static_cast<double>(samples) : 0.0;
  }
  Rational exact_point() const {
    return samples ? Rational(BigInt(successes), BigInt(samples)) : Rational(0);
  }
};

inline double hoeffding_radius(std::uint64_t samples, double confidence) {
  if (samples == 0) return 1.0;
  if (!(confidence > 0 && confidence < 1)) throw RangeError("confidence must lie in (0,1)");
  return std::sqrt(std::log(2.0 / (1.0 - confidence)) / (2.0 * static_cast<double>(samples)));
}

inline Estimate make_estimate(std::uint64_t successes, std::uint64_t samples, double confidence,
                              std::uint64_t seed) {
  Estimate e{successes, samples, confidence, seed, 0.0, 1.0};
  const double p = e.point();
  const double r = hoeffding_radius(samples, confidence);
  e.ci_low = std::clamp(p - r, 0.0, p);
  e.ci_high = std::clamp(p + r, p, 1.0);
  return e;
}

enum class Verdict { pass, fail, inconclusive, skipped, none };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
    case Verdict::skipped: return "skipped";
    case Verdict::none: return "na";
  }
  return "na";
}

struct BoundCheck {
  Estimate estimate;
  Rational bound;
  Verdict verdict = Verdict::inconclusive;
};

/// pass: the whole interval is at or above the bound; fail: the whole
/// interval is below it; otherwise inconclusive.
inline BoundCheck check_bound(const Estimate& e, const Rational& bound) {
  const double b = bound.convert_to<double>();
  Verdict v = Verdict::inconclusive;
  if (e.ci_low >= b) {
    v = Verdict::pass;
  } else if (e.ci_high < b) {
    v = Verdict::fail;
  }
  return {e, bound, v};
}

/// Runs trial(rng, index) for index in [0, samples) on `workers` threads and
/// counts the true results.
template <class Trial>
std::uint64_t count_successes(std::uint64_t samples, std::uint64_t seed, unsigned workers,
                              Trial&& trial) {
  workers = std::max(1u, workers);
  auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
    std::uint64_t hits = 0;
    for (std::uint64_t i = begin; i < end; ++i) {
      auto rng = substream(seed, i);
      if (trial(rng, i)) ++hits;
    }
    return hits;
  };
  if (workers == 1 || samples < 2) return run_range(0, samples);

  std::vector<std::uint64_t> partial(workers, 0);
  std::vector<std::thread> pool;
  const std::uint64_t chunk = (samples + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t begin = std::min<std::uint64_t>(samples, w * chunk);
    const std::uint64_t end = std::min<std::uint64_t>(samples, begin + chunk);
    pool.emplace_back([&, w, begin, end] { partial[w] = run_range(begin, end); });
  }
  for (auto& t : pool) t.join();
  std::uint64_t total = 0;
  for (auto p : partial) total += p;
  return total;
}

namespace detail {

inline Permutation evaluate_perm(const Word& w, std::span<const Permutation> tuple) {
  return evaluate(w, tuple, Permutation::identity(tuple.front().degree()),
                  [](const Permutation& a, const Permutation& b) { return compose(a, b); },
                  [](const Permutation& a) { return inverse(a); });
}

}  // namespace detail

/// Monte Carlo estimate of P(w(g_1..g_k) != 1) for independent uniform g_i.
inline Estimate estimate_nontrivial_prob(const Bsgs& chain, const Word& w, std::uint64_t samples,
                                         double confidence, std::uint64_t seed,
                                         unsigned workers = 1) {
  if (samples < 1) throw RangeError("need at least one sample");
  if (w.empty()) throw EmptyWordError("the empty word is a law in every group");
  const std::uint64_t hits = count_successes(samples, seed, workers, [&](auto& rng, std::uint64_t) {
    std::vector<Permutation> tuple;
    tuple.reserve(w.rank());
    for (std::size_t i = 0; i < w.rank(); ++i) tuple.push_back(uniform_element(chain, rng));
    return !detail::evaluate_perm(w, tuple).is_identity();
  });
  return make_estimate(hits, samples, confidence, seed);
}

/// The exact fraction of k-tuples on which w is not the identity, by full
/// enumeration of G^k.
inline Rational exact_prob_small(const Bsgs& chain, const Word& w, std::uint64_t budget = 10'000'000) {
  if (w.empty()) throw EmptyWordError("the empty word is a law in every group");
  const BigInt order = group_order(chain);
  BigInt tuples = 1;
  for (std::size_t i = 0; i < w.rank(); ++i) tuples *= order;
  if (tuples > budget) {
    throw BudgetError(tuples.str() + " tuples exceed the enumeration budget of " +
                      std::to_string(budget));
  }
  const auto elems = elements(chain, static_cast<std::size_t>(budget));
  const std::size_t k = w.rank();
  std::vector<std::size_t> index(k, 0);
  std::vector<Permutation> tuple(k, elems.front());
  std::uint64_t nontrivial = 0, total = 0;
  for (;;) {
    for (std::size_t i = 0; i < k; ++i) tuple[i] = elems[index[i]];
    if (!detail::evaluate_perm(w, tuple).is_identity()) ++nontrivial;
    ++total;
    std::size_t i = 0;
    while (i < k && ++index[i] == elems.size()) index[i++] = 0;
    if (i == k) break;
  }
  return Rational(BigInt(nontrivial), BigInt(total));
}

/// One-sided Fisher exact test: the p-value for "the first proportion is
/// larger than the second" given s1/n1 and s2/n2.
inline double fisher_greater_pvalue(std::uint64_t s1, std::uint64_t n1, std::uint64_t s2,
                                    std::uint64_t n2) {
  const std::uint64_t total = n1 + n2;
  const std::uint64_t hits = s1 + s2;
  auto log_choose = [](double n, double k) {
    return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1);
  };
  const double denom = log_choose(static_cast<double>(total), static_cast<double>(n1));
  double p = 0;
  const std::uint64_t upper = std::min(hits, n1);
  for (std::uint64_t x = s1; x <= upper; ++x) {
    if (hits - x > n2) continue;
    p += std::exp(log_choose(static_cast<double>(hits), static_cast<double>(x)) +
                  log_choose(static_cast<double>(total - hits), static_cast<double>(n1 - x)) - denom);
  }
  return std::min(1.0, p);
}

struct TableRow {
  std::vector<std::pair<std::string, std::string>> params;
  std::optional<Estimate> estimate;  // absent for skipped rows
  std::optional<Rational> bound;
  Verdict verdict = Verdict::none;
  std::string note;
};

struct ExperimentTable {
  std::string experiment;
  std::uint64_t seed = 0;
  double confidence = 0.99;
  std::uint64_t samples = 0;
  std::string ci_method = "hoeffding";
  std::vector<std::string> param_names;
  std::vector<TableRow> rows;

  bool any_fail() const {
    return std::any_of(rows.begin(), rows.end(),
                       [](const TableRow& r) { return r.verdict == Verdict::fail; });
  }
};

inline std::string format_fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

inline std::string to_csv(const ExperimentTable& t) {
  std::string out;
  for (const auto& name : t.param_names) out += "param_" + name + ",";
  out += "samples,successes,point,ci_low,ci_high,bound,verdict,seed\n";
  for (const auto& r : t.rows) {
    for (const auto& name : t.param_names) {
      auto it = std::find_if(r.params.begin(), r.params.end(),
                             [&](const auto& p) { return p.first == name; });
      out += (it == r.params.end() ? std::string() : it->second) + ",";
    }
    if (r.estimate) {
      const auto& e = *r.estimate;
      out += std::to_string(e.samples) + "," + std::to_string(e.successes) + "," +
             format_fixed(e.point()) + "," + format_fixed(e.ci_low) + "," + format_fixed(e.ci_high) + ",";
    } else {
      out += ",,,,,";
    }
    out += (r.bound ? format_fixed(r.bound->convert_to<double>()) : std::string()) + ",";
    out += std::string(to_string(r.verdict)) + "," + std::to_string(t.seed) + "\n";
  }
  return out;
}

/// A single bound check of w against the finite-permutation-group bound for
/// separation order (length(w), a).
inline ExperimentTable bound_check(const Bsgs& chain, std::string group_label, const Word& w,
                                   std::size_t a, std::uint64_t samples, double confidence,
                                   std::uint64_t seed, unsigned workers = 1) {
  ExperimentTable t{"bound-check", seed, confidence, samples, "hoeffding", {"group", "word", "n", "a"}, {}};
  TableRow row;
  row.params = {{"group", std::move(group_label)},
                {"word", to_string(w)},
                {"n", std::to_string(w.size())},
                {"a", std::to_string(a)}};
  const auto e = estimate_nontrivial_prob(chain, w, samples, confidence, seed, workers);
  const auto check = check_bound(e, finperm_bound(w.size(), a));
  row.estimate = e;
  row.bound = check.bound;
  row.verdict = check.verdict;
  t.rows.push_back(std::move(row));
  return t;
}

/// One row per degree k: an estimate over A_k against (1 - n/(k-n))^n.
inline ExperimentTable alter_sweep(const Word& w, std::span<const std::size_t> degrees,
                                   std::uint64_t samples, std::uint64_t seed,
                                   double confidence = 0.99, unsigned workers = 1) {
  if (w.empty()) throw EmptyWordError("the empty word is a law in every group");
  ExperimentTable t{"alter-sweep", seed, confidence, samples, "hoeffding", {"word", "k", "n"}, {}};
  const std::size_t n = w.size();
  for (std::size_t k : degrees) {
    TableRow row;
    row.params = {{"word", to_string(w)}, {"k", std::to_string(k)}, {"n", std::to_string(n)}};
    if (k <= n + 1 || k < 3) {
      row.verdict = Verdict::skipped;
      row.note = "needs k > length(w) + 1";
      t.rows.push_back(std::move(row));
      continue;
    }
    const Bsgs chain = build_bsgs(standard_group(StandardKind::alternating, k));
    const auto e = estimate_nontrivial_prob(chain, w, samples, confidence, derive_seed(seed, k), workers);
    const auto check = check_bound(e, finperm_bound(n, k - n));
    row.estimate = e;
    row.bound = check.bound;
    row.verdict = check.verdict;
    t.rows.push_back(std::move(row));
  }
  return t;
}

struct FreenessConfig {
  std::size_t arity = 2;
  std::vector<std::size_t> depths;
  std::size_t rank = 2;
  std::size_t max_length = 6;
  std::uint64_t samples = 200;
  std::uint64_t seed = 0;
  double confidence = 0.95;
  unsigned workers = 1;
  std::optional<LabelGroup> labels;  // default: symmetric group on the arity
};

namespace detail {

// Whether some reduced word of length 1..max_len in the given elements is
// the identity.  values[2i] is g_i, values[2i+1] its inverse.
inline bool has_short_relation(const std::vector<Permutation>& values, std::size_t max_len,
                               const Permutation& prefix, std::ptrdiff_t last, std::size_t len) {
  for (std::size_t l = 0; l < values.size(); ++l) {
    if (last >= 0 && (static_cast<std::size_t>(last) ^ 1u) == l) continue;
    // prefix * v_l == 1  <=>  prefix == v_l^{-1}
    if (prefix == values[l ^ 1u]) return true;
    if (len + 1 < max_len) {
      if (has_short_relation(values, max_len, compose(prefix, values[l]),
                             static_cast<std::ptrdiff_t>(l), len + 1)) {
        return true;
      }
    }
  }
  return false;
}

}  // namespace detail

/// Per depth D: the fraction of Haar-random rank-tuples of depth-D portraits
/// for which some reduced word of length <= max_length is the identity to
/// depth D.
inline ExperimentTable freeness_experiment(const FreenessConfig& cfg) {
  if (cfg.rank < 1) throw RangeError("tuple size must be at least 1");
  if (cfg.max_length < 1) throw RangeError("max word length must be at least 1");
  if (cfg.samples < 1) throw RangeError("need at least one sample");
  const LabelGroup labels = cfg.labels ? *cfg.labels : LabelGroup::symmetric(cfg.arity);
  ExperimentTable t{"freeness", cfg.seed, cfg.confidence, cfg.samples, "hoeffding",
                    {"d", "D", "n", "L"}, {}};
  for (std::size_t depth : cfg.depths) {
    TableRow row;
    row.params = {{"d", std::to_string(cfg.arity)},
                  {"D", std::to_string(depth)},
                  {"n", std::to_string(cfg.rank)},
                  {"L", std::to_string(cfg.max_length)}};
    const std::uint64_t row_seed = derive_seed(cfg.seed, depth);
    const auto hits = count_successes(cfg.samples, row_seed, cfg.workers, [&](auto& rng, std::uint64_t) {
      std::vector<Permutation> values;
      values.reserve(2 * cfg.rank);
      for (std::size_t i = 0; i < cfg.rank; ++i) {
        Permutation leaves = haar_sample(cfg.arity, depth, rng, labels).level_permutation();
        Permutation leaves_inv = inverse(leaves);
        values.push_back(std::move(leaves));
        values.push_back(std::move(leaves_inv));
      }
      return detail::has_short_relation(values, cfg.max_length,
                                        Permutation::identity(values.front().degree()), -1, 0);
    });
    row.estimate = make_estimate(hits, cfg.samples, cfg.confidence, row_seed);
    row.verdict = Verdict::none;
    t.rows.push_back(std::move(row));
  }
  return t;
}

struct DecayCheck {
  bool non_increasing = true;   // no consecutive rise beyond the intervals
  bool last_below_first = false;  // interval at the last depth entirely below the first
};

/// Decay of the freeness fractions along the rows of a freeness table.
inline DecayCheck decay_check(const ExperimentTable& t) {
  DecayCheck c;
  for (std::size_t i = 0; i + 1 < t.rows.size(); ++i) {
    const auto& a = *t.rows[i].estimate;
    const auto& b = *t.rows[i + 1].estimate;
    if (b.ci_low > a.ci_high) c.non_increasing = false;
  }
  if (t.rows.size() >= 2) {
    c.last_below_first = t.rows.back().estimate->ci_high < t.rows.front().estimate->ci_low;
  }
  return c;
}

}  // namespace lawless
