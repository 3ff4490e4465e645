// End-to-end tests driving the installed binary through a shell, checking
// exit codes, output formats, and the persistent cache behaviour.

#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "support.hpp"

using namespace stabletensor;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr combined
};

/// Run the CLI via the shell with a controlled STABLETENSOR_CACHE (empty by
/// default so the host environment cannot leak into cache resolution).
RunResult run_cli(const std::string& args, const std::string& env_prefix = "STABLETENSOR_CACHE=") {
  std::string cmd = env_prefix + " '" + STABLETENSOR_CLI + "' " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) r.output.append(buf, n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    std::random_device rd;
    path = std::filesystem::temp_directory_path() / ("stabletensor_cli_" + std::to_string(rd()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::size_t count_lines(const std::string& path) {
  std::ifstream in(path);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line))
    if (!line.empty()) ++n;
  return n;
}

std::string first_line(const std::string& path) {
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  return line;
}

}  // namespace

TEST_CASE("cli: help and argument errors", "[cli]") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("decompose --help").exit_code == 0);
  CHECK(run_cli("").exit_code == 2);             // a subcommand is required
  CHECK(run_cli("frobnicate").exit_code == 2);   // unknown subcommand
  CHECK(run_cli("decompose --group sp --rank 3 --lhs 2,1").exit_code == 2);  // missing --rhs

  auto bad_group = run_cli("decompose --group e8 --rank 3 --lhs 1 --rhs 1");
  CHECK(bad_group.exit_code == 2);

  auto bad_partition = run_cli("decompose --group sp --rank 3 --lhs 1,2 --rhs 1");
  CHECK(bad_partition.exit_code == 2);

  auto bad_format = run_cli("decompose --group sp --rank 3 --lhs 1 --rhs 1 --format yaml");
  CHECK(bad_format.exit_code == 2);

  auto too_long = run_cli("decompose --group gl --rank 2 --lhs 2,1,1 --rhs 1,1");
  CHECK(too_long.exit_code == 2);
}

TEST_CASE("cli: decompose engine selection", "[cli]") {
  SECTION("below the stable bound the recursion refuses") {
    auto r = run_cli("decompose --group sp --rank 3 --lhs 2,1,1 --rhs 1,1");
    CHECK(r.exit_code == 3);
    CHECK(r.output.find("below the stable bound") != std::string::npos);
  }

  SECTION("the character-theoretic rule can be forced below the bound") {
    auto r = run_cli("decompose --group sp --rank 3 --lhs 2,1,1 --rhs 1,1 --force-oracle");
    CHECK(r.exit_code == 0);
    CHECK(r.output ==
          "(3,2,1) + (3,1,0) + (2,2,2) + (2,2,0) + (2,1,1) + (2,0,0) + (1,1,0)\n");
  }

  SECTION("in the stable range the recursion is the default") {
    auto r = run_cli("decompose --group sp --rank 5 --lhs 2,1,1 --rhs 1,1 --format json");
    REQUIRE(r.exit_code == 0);
    Json j = Json::parse(r.output);
    CHECK(j["engine"] == "pieri-recursive");
    CHECK(j["rank"] == 5);
    CHECK(j["family"] == "sp");
    REQUIRE(j["terms"].size() == 11);
    long long found = 0;
    for (const auto& t : j["terms"])
      if (t["weight"] == std::vector<long long>{2, 1, 1, 0, 0}) found = t["mult"].get<long long>();
    CHECK(found == 2);
  }

  SECTION("general linear products work at any rank") {
    auto r = run_cli("decompose --group gl --rank 3 --lhs 2,1,1 --rhs 1,1");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "(3,2,1) + (2,2,2)\n");
  }

  SECTION("the even orthogonal family below the bound keeps chiral terms") {
    auto r = run_cli(
        "decompose --group so-even --rank 4 --lhs 2,1,1 --rhs 1,1 --force-oracle --format json");
    REQUIRE(r.exit_code == 0);
    Json j = Json::parse(r.output);
    CHECK(j["engine"] == "klimyk-oracle");
    REQUIRE(j["terms"].size() == 13);
    long long chiral = 0, repeated = 0;
    for (const auto& t : j["terms"]) {
      if (t["weight"] == std::vector<long long>{1, 1, 1, -1}) chiral = t["mult"].get<long long>();
      if (t["weight"] == std::vector<long long>{2, 1, 1, 0}) repeated = t["mult"].get<long long>();
    }
    CHECK(chiral == 1);
    CHECK(repeated == 3);
  }

  SECTION("tsv format") {
    auto r = run_cli("decompose --group sp --rank 2 --lhs 1 --rhs 1 --format tsv");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "2,0\t1\n1,1\t1\n0,0\t1\n");
  }
}

TEST_CASE("cli: stable decomposition", "[cli]") {
  auto pretty = run_cli("stable --lhs 1 --rhs 1");
  CHECK(pretty.exit_code == 0);
  CHECK(pretty.output == "(2) + (1,1) + (0)\n");

  auto r = run_cli("stable --lhs 2,1,1 --rhs 1,1 --format json");
  REQUIRE(r.exit_code == 0);
  Json j = Json::parse(r.output);
  CHECK(j["n0"] == 5);
  CHECK(j["via_family"] == "sp");
  CHECK(j["via_rank"] == 5);
  CHECK(j["terms"].size() == 11);
}

TEST_CASE("cli: stability survey", "[cli]") {
  SECTION("json report") {
    auto r = run_cli("stability --lhs 1 --rhs 1 --nmax 4 --groups sp --format json");
    REQUIRE(r.exit_code == 0);
    Json j = Json::parse(r.output);
    CHECK(j["stable_from"]["sp"] == 2);
    CHECK(j["conclusions_verified"] == true);
  }

  SECTION("default group list spans the classical families") {
    auto r = run_cli("stability --lhs 1 --rhs 1 --nmax 4");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("stable_from: sp=2 so-odd=2 so-even=3") != std::string::npos);
    CHECK(r.output.find("conclusions: verified") != std::string::npos);
  }

  SECTION("window too small") {
    CHECK(run_cli("stability --lhs 1 --rhs 1 --nmax 3").exit_code == 2);
  }
}

TEST_CASE("cli: cross-family comparison", "[cli]") {
  auto r = run_cli("compare-groups --lhs 2,1 --rhs 1,1 --rank 6");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("tables coincide at rank 6") != std::string::npos);

  auto dflt = run_cli("compare-groups --lhs 2,1 --rhs 1,1 --format json");
  REQUIRE(dflt.exit_code == 0);
  Json j = Json::parse(dflt.output);
  CHECK(j["rank"] == 5);  // n0 + 1
  CHECK(j["match"] == true);
  CHECK(j["tables"].size() == 3);

  CHECK(run_cli("compare-groups --lhs 2,1 --rhs 1,1 --rank 4").exit_code == 3);
  CHECK(run_cli("compare-groups --lhs 2,1 --rhs 1,1 --groups gl,sp").exit_code == 2);
}

TEST_CASE("cli: reproduce embedded tables", "[cli]") {
  TempDir tmp;
  auto r = run_cli("reproduce-tables --out-dir '" + tmp.file("tables") + "'");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("table_gl: 4/4 rows match") != std::string::npos);
  CHECK(r.output.find("table_sp: 4/4 rows match") != std::string::npos);
  CHECK(r.output.find("table_so-odd: 4/4 rows match") != std::string::npos);
  CHECK(r.output.find("table_so-even: 5/5 rows match") != std::string::npos);

  auto gl = tmp.file("tables") + "/table_gl.tsv";
  REQUIRE(std::filesystem::exists(gl));
  CHECK(first_line(gl) == "GL(3)\t2,1,1\t1,1,0\t3,2,1\t1");
  CHECK(std::filesystem::exists(tmp.file("tables") + "/table_sp.tsv"));
  CHECK(std::filesystem::exists(tmp.file("tables") + "/table_so-odd.tsv"));
  CHECK(std::filesystem::exists(tmp.file("tables") + "/table_so-even.tsv"));

  SECTION("the self-test corruption fails loudly") {
    auto bad = run_cli("reproduce-tables --selftest-corrupt --out-dir '" + tmp.file("bad") + "'");
    CHECK(bad.exit_code == 4);
    CHECK(bad.output.find("MISMATCH") != std::string::npos);
    CHECK(bad.output.find("table_gl: 3/4 rows match") != std::string::npos);
  }
}

TEST_CASE("cli: coefficient cache lifecycle", "[cli][cache]") {
  TempDir tmp;
  std::string cache = tmp.file("coeffs.jsonl");
  std::string base = "decompose --group sp --rank 5 --lhs 2,1,1 --rhs 1,1 --cache '" + cache + "'";

  SECTION("miss computes and appends; hit reuses") {
    auto first = run_cli(base);
    CHECK(first.exit_code == 0);
    CHECK(count_lines(cache) == 1);

    auto second = run_cli(base);
    CHECK(second.exit_code == 0);
    CHECK(second.output == first.output);
    CHECK(count_lines(cache) == 1);  // a hit must not append

    // A different engine tag is a different key.
    auto forced = run_cli(base + " --force-oracle");
    CHECK(forced.exit_code == 0);
    CHECK(count_lines(cache) == 2);

    auto verify = run_cli("verify-cache --cache '" + cache + "'");
    CHECK(verify.exit_code == 0);
    CHECK(verify.output.find("2/2 records verified") != std::string::npos);
  }

  SECTION("corrupt lines are skipped with a warning") {
    run_cli(base);
    {
      std::ofstream out(cache, std::ios::app);
      out << "{ not json\n";
    }
    auto verify = run_cli("verify-cache --cache '" + cache + "'");
    CHECK(verify.exit_code == 0);
    CHECK(verify.output.find("skipped 1 corrupt line(s)") != std::string::npos);
    CHECK(verify.output.find("1/1 records verified") != std::string::npos);
  }

  SECTION("stale records are detected") {
    CacheRecord wrong;
    wrong.family = "sp";
    wrong.rank = 2;
    wrong.lhs = {1, 0};
    wrong.rhs = {1, 0};
    wrong.engine = kEngineOracle;
    wrong.terms = {{{2, 0}, 1}};  // missing two terms
    {
      std::ofstream out(cache);
      out << cache_record_line(wrong) << "\n";
    }
    auto verify = run_cli("verify-cache --cache '" + cache + "'");
    CHECK(verify.exit_code == 4);
    CHECK(verify.output.find("STALE") != std::string::npos);
    CHECK(verify.output.find("0/1 records verified") != std::string::npos);
  }

  SECTION("records that cannot be recomputed are invalid") {
    CacheRecord impossible;
    impossible.family = "gl";
    impossible.rank = 2;
    impossible.lhs = {1, 0};
    impossible.rhs = {1, 0};
    impossible.engine = kEngineRecursive;  // no GL record can carry this tag
    impossible.terms = {{{2, 0}, 1}, {{1, 1}, 1}};
    {
      std::ofstream out(cache);
      out << cache_record_line(impossible) << "\n";
    }
    auto verify = run_cli("verify-cache --cache '" + cache + "'");
    CHECK(verify.exit_code == 4);
    CHECK(verify.output.find("INVALID") != std::string::npos);
  }

  SECTION("the environment variable outranks the flag") {
    std::string envfile = tmp.file("env.jsonl");
    std::string flagfile = tmp.file("flag.jsonl");
    auto r = run_cli("decompose --group sp --rank 2 --lhs 1 --rhs 1 --cache '" + flagfile + "'",
                     "STABLETENSOR_CACHE='" + envfile + "'");
    CHECK(r.exit_code == 0);
    CHECK(count_lines(envfile) == 1);
    CHECK_FALSE(std::filesystem::exists(flagfile));
  }

  SECTION("verify-cache needs a cache") {
    CHECK(run_cli("verify-cache").exit_code == 2);
  }
}
