#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "lawless/json_io.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int status = -1;
  std::string out;
};

fs::path scratch() {
  static const fs::path dir = [] {
    auto p = fs::temp_directory_path() / ("lawless_cli_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs the CLI with `args`; stdout and stderr are captured together.
Result run(const std::string& args, const std::string& env = "") {
  const fs::path log = scratch() / "log.txt";
  const std::string cmd = env + (env.empty() ? "" : " ") + "'" + LAWLESS_EXE + "' " + args + " > '" +
                          log.string() + "' 2>&1";
  const int raw = std::system(cmd.c_str());
  Result r;
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(log);
  return r;
}

std::string path(const std::string& name) { return (scratch() / name).string(); }

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("list names every experiment") {
  const auto a = run("list");
  CHECK(a.status == 0);
  for (const char* name : {"bound-check", "witness", "verify", "alter-sweep", "freeness", "separation-order",
                           "exact-prob"}) {
    CHECK(contains(a.out, name));
  }
  CHECK(run("list").out == a.out);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run("").status == 2);
  CHECK(run("no-such-command").status == 2);
  CHECK(run("bound-check --group foo:5 --word ab").status == 2);
  CHECK(run("bound-check --group alt:6 --word ab7").status == 2);
  CHECK(run("bound-check --word ab").status == 2);
  CHECK(run("witness --action grig --word ab").status == 2);
  CHECK(run("--help").status == 0);
}

TEST_CASE("bound-check") {
  const auto r = run("bound-check --group alt:12 --word abAB --samples 10000 --seed 7 --out " + path("bc"));
  CHECK(r.status == 0);
  CHECK(contains(r.out, "1/16"));
  CHECK(contains(r.out, "pass"));
  const std::string csv = slurp(path("bc.csv"));
  CHECK(contains(csv, "seed\n"));
  CHECK(contains(csv, ",0.062500,pass,7\n"));
  const auto j = lawless::Json::parse(slurp(path("bc.json")));
  CHECK(j["tables"][0]["rows"][0]["verdict"] == "pass");

  // An impossible bound turns into a failed row.
  const auto bad = run("bound-check --group alt:5 --word aa --a 1000 --samples 200 --seed 1");
  CHECK(bad.status == 1);
  CHECK(contains(bad.out, "fail"));
}

TEST_CASE("outputs are byte-identical across runs and worker counts") {
  const std::string args = "alter-sweep --word abAB --degrees 6,9 --samples 400 --seed 3 --out ";
  REQUIRE(run(args + path("s1")).status == 0);
  REQUIRE(run(args + path("s2") + " --workers 4").status == 0);
  CHECK(slurp(path("s1.csv")) == slurp(path("s2.csv")));
  CHECK(slurp(path("s1.json")) == slurp(path("s2.json")));
  CHECK_FALSE(slurp(path("s1.csv")).empty());
}

TEST_CASE("seed falls back to LAWLESS_SEED") {
  REQUIRE(run("bound-check --group alt:7 --word ab --samples 300 --seed 42 --out " + path("e1")).status == 0);
  REQUIRE(run("bound-check --group alt:7 --word ab --samples 300 --out " + path("e2"), "LAWLESS_SEED=42").status == 0);
  CHECK(slurp(path("e1.csv")) == slurp(path("e2.csv")));
  CHECK(contains(slurp(path("e2.csv")), ",42\n"));
}

TEST_CASE("witness and verify round trip") {
  const auto w = run("witness --action alt:14 --word abAB --point 1 --out " + path("c1"));
  CHECK(w.status == 0);
  const std::string cert = path("c1.cert.json");
  REQUIRE(fs::exists(cert));
  CHECK(run("verify " + cert).status == 0);

  auto j = lawless::Json::parse(slurp(cert));
  j["trajectory"][2] = j["trajectory"][2] == 14 ? 13 : 14;
  std::ofstream(path("tampered.json")) << j.dump(2);
  const auto t = run("verify " + path("tampered.json"));
  CHECK(t.status == 1);
  CHECK(contains(t.out, "trajectory"));

  const std::string text = slurp(cert);
  std::ofstream(path("truncated.json")) << text.substr(0, text.size() / 2);
  CHECK(run("verify " + path("truncated.json")).status == 2);
  CHECK(run("verify " + path("missing.json")).status == 2);

  auto wrong_kind = lawless::Json::parse(text);
  wrong_kind.erase("tuple");
  std::ofstream(path("nokey.json")) << wrong_kind.dump();
  CHECK(run("verify " + path("nokey.json")).status == 2);
}

TEST_CASE("witness on the other actions") {
  CHECK(run("witness --action alt:4 --word abAB --point 1").status == 1);
  const auto out = run("witness --action alt:10 --word aBAb");
  CHECK(out.status == 0);
  CHECK(contains(out.out, "lawless-certificate"));

  REQUIRE(run("witness --action tree:2,8 --word abAB --out " + path("tree")).status == 0);
  CHECK(run("verify " + path("tree.cert.json")).status == 0);
  REQUIRE(run("witness --action thompson --word abAB --point 1/2 --out " + path("f")).status == 0);
  CHECK(run("verify " + path("f.cert.json")).status == 0);
  CHECK(run("witness --action thompson --word ab --point 1/3").status == 2);
  CHECK(run("witness --action tree:2,3 --word abAB --point 0000").status != 0);
}

TEST_CASE("alter-sweep") {
  const auto r = run("alter-sweep --word abAB --degrees 5,8 --samples 200 --seed 1 --out " + path("as"));
  CHECK(r.status == 0);
  CHECK(contains(slurp(path("as.csv")), "skipped"));
}

TEST_CASE("freeness") {
  const auto r = run("freeness --depths 2,3 --samples 50 --seed 1 --out " + path("fr"));
  CHECK(r.status == 0);
  const auto j = lawless::Json::parse(slurp(path("fr.json")));
  CHECK(j["tables"][0]["rows"].size() == 2);
  CHECK(run("freeness --depths 2 --labels nope").status == 2);
}

TEST_CASE("separation-order") {
  const auto r = run("separation-order --group alt:6 --n 2");
  CHECK(r.status == 0);
  CHECK(contains(r.out, "a=4"));
  CHECK(run("separation-order --group alt:6 --n 9").status != 0);
}

TEST_CASE("exact-prob") {
  const auto r = run("exact-prob --group alt:4 --word abAB");
  CHECK(r.status == 0);
  CHECK(contains(r.out, "2/3"));
  CHECK(run("exact-prob --group alt:8 --word abAB --budget 100").status == 1);
}

TEST_CASE("rist-search") {
  const auto r = run("rist-search --group grig --vertex 1 --length 3 --depth 8");
  CHECK(r.status == 0);
  CHECK(contains(r.out, ": d,"));
  CHECK(run("rist-search --group alt:5 --vertex 1").status == 2);
}
