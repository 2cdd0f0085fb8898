// lawless: experiment runner and certificate verifier.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "lawless/cli.hpp"

namespace {

using lawless::cli::RunConfig;

struct Flags {
  RunConfig config;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::size_t a = 0;
  std::size_t n = 0;
  std::string group, word, point, vertex, out, input;
};

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  return static_cast<bool>(f);
}

void add_common(CLI::App* sub, Flags& f, bool sampled) {
  sub->add_option("--seed", f.seed, "master seed (default: $LAWLESS_SEED, then 0)");
  sub->add_option("--out", f.out, "write NAME.csv and NAME.json (NAME.cert.json for witness)");
  if (sampled) {
    sub->add_option("--samples", f.config.samples, "samples per row")->capture_default_str();
    sub->add_option("--confidence", f.config.confidence, "two-sided confidence level")->capture_default_str();
    sub->add_option("--workers", f.config.workers, "threads for the sample loop")->capture_default_str();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lawless: group laws, separating actions and Monte Carlo word-map experiments"};
  app.require_subcommand(1);
  Flags f;

  app.add_subcommand("list", "list the experiments");

  auto* bound = app.add_subcommand("bound-check", "estimate P(w != 1) against (1 - n/a)^n");
  bound->add_option("--group", f.group, "alt:k or sym:k")->required();
  bound->add_option("--word", f.word, "reduced word, e.g. abAB")->required();
  bound->add_option("--a", f.a, "separation order (default: known value for the group)");
  add_common(bound, f, true);

  auto* witness = app.add_subcommand("witness", "certify that a word is not a law");
  witness->add_option("--action", f.group, "alt:k, sym:k, tree:d,D or thompson")->required();
  witness->add_option("--word", f.word, "reduced word")->required();
  witness->add_option("--point", f.point, "start point (1, a vertex string, or p/2^e)");
  add_common(witness, f, false);

  auto* verify = app.add_subcommand("verify", "re-check a certificate");
  verify->add_option("certificate", f.input, "certificate JSON file")->required();

  auto* sweep = app.add_subcommand("alter-sweep", "bound-check over A_k for a list of k");
  sweep->add_option("--word", f.word, "reduced word")->required();
  sweep->add_option("--degrees", f.config.degrees, "comma-separated degrees")->delimiter(',')->required();
  add_common(sweep, f, true);

  auto* freeness = app.add_subcommand("freeness", "short-relation fraction for Haar-random tree automorphisms");
  freeness->add_option("--depths", f.config.depths, "comma-separated truncation depths")->delimiter(',')->required();
  freeness->add_option("--arity", f.config.arity, "tree arity")->capture_default_str();
  freeness->add_option("--rank", f.config.rank, "tuple size")->capture_default_str();
  freeness->add_option("--length", f.config.length, "maximum word length")->capture_default_str();
  freeness->add_option("--labels", f.config.labels, "vertex label group: sym or cyclic")->capture_default_str();
  add_common(freeness, f, true);

  auto* sep = app.add_subcommand("separation-order", "separation order of A_k or S_k on n-sets");
  sep->add_option("--group", f.group, "alt:k or sym:k")->required();
  sep->add_option("--n", f.n, "size of the fixed set")->required();
  sep->add_option("--trials", f.trials, "sample this many sets instead of enumerating");
  sep->add_option("--budget", f.config.budget, "maximum number of sets to enumerate")->capture_default_str();
  sep->add_option("--seed", f.seed, "seed for sampled mode");

  auto* exact = app.add_subcommand("exact-prob", "exact P(w != 1) by enumeration");
  exact->add_option("--group", f.group, "alt:k or sym:k")->required();
  exact->add_option("--word", f.word, "reduced word")->required();
  exact->add_option("--budget", f.config.budget, "maximum number of tuples")->capture_default_str();

  auto* rist = app.add_subcommand("rist-search", "words supported exactly below a vertex");
  rist->add_option("--group", f.group, "grig")->required();
  rist->add_option("--vertex", f.vertex, "vertex string, e.g. 1")->required();
  rist->add_option("--length", f.config.length, "maximum word length")->capture_default_str();
  rist->add_option("--depth", f.config.depth, "check depth")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return lawless::cli::kUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  RunConfig& c = f.config;
  c.subcommand = chosen->get_name();
  auto given = [&](const char* flag) {
    try {
      return chosen->get_option(flag)->count() > 0;
    } catch (const CLI::OptionNotFound&) {
      return false;
    }
  };
  if (given("--group") || given("--action")) c.group = f.group;
  if (given("--word")) c.word = f.word;
  if (given("--point")) c.point = f.point;
  if (given("--vertex")) c.vertex = f.vertex;
  if (given("--seed")) c.seed = f.seed;
  if (given("--trials")) c.trials = f.trials;
  if (given("--a")) c.a = f.a;
  if (given("--n")) c.n = f.n;
  if (given("--out")) c.out = f.out;

  if (c.subcommand == "verify") {
    const auto outcome = lawless::cli::verify_certificate_file(f.input);
    (outcome.exit_status == lawless::cli::kOk ? std::cout : std::cerr) << outcome.message << '\n';
    return outcome.exit_status;
  }

  lawless::cli::RunReport report;
  try {
    report = lawless::cli::run(c);
  } catch (const lawless::cli::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return lawless::cli::kUsage;
  } catch (const lawless::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return lawless::cli::kFailed;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return lawless::cli::kFailed;
  }

  if (report.certificate) {
    const std::string doc = report.certificate->dump(2) + "\n";
    if (c.out) {
      if (!write_file(*c.out + ".cert.json", doc)) {
        std::cerr << "error: cannot write " << *c.out << ".cert.json\n";
        return lawless::cli::kFailed;
      }
      std::cout << report.summary;
    } else {
      std::cout << doc;
      std::cerr << report.summary;
    }
  } else {
    for (const auto& t : report.tables) std::cout << lawless::cli::format_table(t);
    std::cout << report.summary;
    if (c.out && !report.tables.empty()) {
      std::string csv;
      for (const auto& t : report.tables) csv += lawless::to_csv(t);
      if (!write_file(*c.out + ".csv", csv) ||
          !write_file(*c.out + ".json", lawless::cli::report_json(report).dump(2) + "\n")) {
        std::cerr << "error: cannot write outputs for " << *c.out << '\n';
        return lawless::cli::kFailed;
      }
    }
  }
  if (c.subcommand != "list") {
    char buf[64];
    std::snprintf(buf, sizeof buf, "wall-clock: %.2f s\n", report.wall_seconds);
    (report.certificate && !c.out ? std::cerr : std::cout) << buf;
  }
  return report.exit_status;
}
