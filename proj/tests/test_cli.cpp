#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <sys/wait.h>

#include <json.hpp>

#include "qsub/cli.hpp"
#include "qsub/errors.hpp"

using namespace qsub;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run_cli(const std::string& args) {
  std::string cmd = std::string(QSUB_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

cli::Config config(std::string command, std::string suite = {}) {
  cli::Config c;
  c.command = std::move(command);
  c.suite = std::move(suite);
  return c;
}

}  // namespace

TEST_CASE("classify-words examples") {
  auto c = config("classify-words");
  c.gens = "ooxx";
  auto r = cli::run(c);
  CHECK(r.pass);
  CHECK(r.results["spec"] == "White(2)");
  c.gens = "o";
  CHECK(cli::run(c).results["spec"] == "ModK(1)");
  c.gens = "e";
  CHECK(cli::run(c).results["spec"] == "White(0)");
  c.gens = "ooxx,xxoo";
  CHECK(cli::run(c).results["spec"] == "Pair(2,2)");
}

TEST_CASE("table flags small bounds") {
  auto c = config("table");
  c.bound = 4;
  auto r = cli::run(c);
  bool flagged = false;
  for (const auto& cat : r.results["categories"])
    if (!cat["match"].get<bool>()) {
      CHECK(cat["flags"].size() == 1);
      flagged = flagged || cat["flags"][0] == "bound too small";
    }
  CHECK(flagged);
  c.bound = 0;
  auto z = cli::run(c);
  CHECK_FALSE(z.pass);
  for (const auto& cat : z.results["categories"]) {
    CHECK(cat["count"] == 1);
    CHECK(cat["flags"][0] == "degenerate");
  }
}

TEST_CASE("verify suites from the examples pass") {
  auto laws = config("verify", "laws");
  laws.n = 2;
  laws.points = 6;
  auto lr = cli::run(laws);
  CHECK(lr.pass);
  CHECK(lr.results["orientation"] == "T_q o T_p = N^loops T_qp");

  auto p = config("verify", "psi");
  p.k = 1;
  p.len = 4;
  CHECK(cli::run(p).pass);

  auto t = config("verify", "trees");
  t.base = "m2";
  t.depth = 1;
  auto tr = cli::run(t);
  CHECK(tr.pass);
  CHECK(tr.results["schur"].size() == 2);

  auto f = config("verify", "fusion-rank");
  f.len = 4;
  CHECK(cli::run(f).pass);

  auto red = config("verify", "reduce");
  red.len = 8;
  red.samples = 50;
  CHECK(cli::run(red).pass);
}

TEST_CASE("bad input is rejected") {
  auto t = config("verify", "trees");
  t.base = "q2";
  CHECK_THROWS_AS(cli::run(t), ParseError);
  CHECK_THROWS_AS(cli::run(config("verify", "nope")), PreconditionViolated);
  auto c = config("classify-words");
  c.gens = "oz";
  CHECK_THROWS_AS(cli::run(c), ParseError);
}

TEST_CASE("binary exit codes") {
  CHECK(run_cli("classify-words --gens ooxx").code == 0);
  CHECK(run_cli("verify laws --N 2 --points 6").code == 0);
  CHECK(run_cli("verify psi --k 1 --len 4").code == 0);
  CHECK(run_cli("verify trees --base m2 --depth 1").code == 0);
  CHECK(run_cli("").code == 2);
  CHECK(run_cli("frobnicate").code == 2);
  CHECK(run_cli("verify laws --N notanumber").code == 2);
  CHECK(run_cli("classify-words --gens oqx").code == 2);
  CHECK(run_cli("verify trees --base z9").code == 2);
  CHECK(run_cli("table --bound 0").code == 1);
}

TEST_CASE("json output contract") {
  auto r = run_cli("classify-words --gens ox --format json");
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j.contains("config"));
  CHECK(j.contains("results"));
  CHECK(j["verdict"] == "pass");
  CHECK(j["config"]["gens"] == "ox");
  CHECK(j["results"]["spec"] == "White(1)");
}

TEST_CASE("reports are reproducible from config and seed") {
  auto a = run_cli("verify reduce --len 10 --samples 200 --seed 9 --format json");
  auto b = run_cli("verify reduce --len 10 --samples 200 --seed 9 --format json");
  CHECK(a.out == b.out);
  CHECK(json::parse(a.out)["config"]["seed"] == 9);
}

TEST_CASE("cache hits and misses give the same report") {
  auto dir = std::filesystem::temp_directory_path() / "qsub_cli_cache_test";
  std::filesystem::remove_all(dir);
  auto args = "enumerate --category NCeven --upper oooo --lower oo --format json --cache-dir " + dir.string();
  auto cold = run_cli(args);
  auto warm = run_cli(args);
  CHECK(cold.code == 0);
  CHECK(cold.out == warm.out);
  CHECK(json::parse(cold.out)["results"]["count"] == 12);
  std::filesystem::remove_all(dir);
}
