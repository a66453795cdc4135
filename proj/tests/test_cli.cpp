#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "hypolink/record.hpp"
#include "support/temp_dir.hpp"

using testing_support::TempDir;
using testing_support::read_file;

namespace {

struct RunResult {
  int exit_code;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args, const TempDir& dir) {
  auto log = dir.file("cli-out-" + std::to_string(::rand()) + ".txt");
  std::string cmd = std::string(HYPOLINK_CLI_PATH) + " " + args + " > " +
                    log.string() + " 2>&1";
  int status = std::system(cmd.c_str());
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, read_file(log)};
}

}  // namespace

TEST_CASE("help exits zero") {
  TempDir dir;
  CHECK(run_cli("--help", dir).exit_code == 0);
  CHECK(run_cli("predict --help", dir).exit_code == 0);
}

TEST_CASE("unknown flags and methods are usage errors") {
  TempDir dir;
  CHECK(run_cli("--definitely-not-a-flag", dir).exit_code == 1);

  auto graph = dir.write("g.txt",
                         "hypolink-graph 1\nmatter 2\nA\nB\nkeywords 2\nk1\nk2\n"
                         "triplets 3\n0 0 2\n0 1 1\n1 0 1\n");
  auto result = run_cli("predict --graph-in " + graph.string() + " --method bogus", dir);
  CHECK(result.exit_code == 1);
  // the message names the valid methods
  CHECK(result.output.find("user-mp") != std::string::npos);
  CHECK(result.output.find("mfmp") != std::string::npos);
}

TEST_CASE("missing input files are data errors") {
  TempDir dir;
  auto result = run_cli("extract --corpus /nonexistent.jsonl --out " +
                            dir.file("t.jsonl").string(),
                        dir);
  CHECK(result.exit_code == 2);
}

TEST_CASE("absent keyword is a data error naming the problem") {
  TempDir dir;
  // corpus whose vocabulary will not contain the requested stem; two matter
  // with disjoint abstracts keep the candidate set non-empty
  std::string corpus;
  for (int i = 0; i < 4; ++i) {
    nlohmann::json j{{"id", "d" + std::to_string(i)},
                     {"year", 2004 + (i % 9)},
                     {"title", "FeSe films"},
                     {"abstract", "spin order parameter"},
                     {"venue", "synth"}};
    corpus += j.dump() + "\n";
  }
  for (int i = 0; i < 4; ++i) {
    nlohmann::json j{{"id", "t" + std::to_string(i)},
                     {"year", 2005},
                     {"title", "NiO films"},
                     {"abstract", "gap structure data"},
                     {"venue", "synth"}};
    corpus += j.dump() + "\n";
  }
  auto corpus_path = dir.write("c.jsonl", corpus);

  auto r1 = run_cli("extract --corpus " + corpus_path.string() + " --out " +
                        dir.file("terms.jsonl").string() + " --stats-out " +
                        dir.file("stats.txt").string(),
                    dir);
  REQUIRE(r1.exit_code == 0);
  auto r2 = run_cli("build --terms " + dir.file("terms.jsonl").string() +
                        " --graph-out " + dir.file("g.txt").string() +
                        " --min-keyword-count 1",
                    dir);
  REQUIRE(r2.exit_code == 0);

  auto r3 = run_cli("evaluate --graph-in " + dir.file("g.txt").string() +
                        " --test-terms " + dir.file("terms.jsonl").string() +
                        " --method pa --keyword antiferromagnet --out-dir " +
                        dir.path().string(),
                    dir);
  CHECK(r3.exit_code == 2);
  CHECK(r3.output.find("keyword not in vocabulary") != std::string::npos);
}

TEST_CASE("pipeline runs end to end and repeats byte-identically") {
  TempDir dir;
  std::string flags =
      " --n-matter 30 --n-keywords 20 --n-docs-train 250 --n-docs-test 80"
      " --n-groups 4 --min-keyword-count 3 --k 4 --mf-epochs 10 --bootstrap 200"
      " --max-n 50 --top 20 --seed 9 --method item-mp";
  auto r1 = run_cli("pipeline --out " + (dir.path() / "a").string() + flags, dir);
  REQUIRE(r1.exit_code == 0);
  auto r2 = run_cli("pipeline --out " + (dir.path() / "b").string() + flags, dir);
  REQUIRE(r2.exit_code == 0);

  for (const char* name : {"train.jsonl", "test.jsonl", "truth.csv", "graph.txt",
                           "predictions.csv", "groc.csv", "precision.csv",
                           "manifest.json"}) {
    INFO("artifact " << name);
    CHECK(read_file(dir.path() / "a" / name) == read_file(dir.path() / "b" / name));
  }

  // predictions carry the documented header
  auto head = read_file(dir.path() / "a" / "predictions.csv").substr(0, 26);
  CHECK(head.find("rank,matter,keyword,score") == 0);
}

TEST_CASE("config file fills unset flags and rejects unknown keys") {
  TempDir dir;
  auto cfg = dir.write("synth.cfg",
                       "# scratch corpus\n"
                       "n-matter=25\nn-keywords=15\nn-docs-train=150\n"
                       "n-docs-test=50\nn-groups=3\nseed=5\n");
  auto r1 = run_cli("synth --out " + (dir.path() / "a").string() + " --config " +
                        cfg.string(),
                    dir);
  REQUIRE(r1.exit_code == 0);
  auto r2 = run_cli("synth --out " + (dir.path() / "b").string() +
                        " --seed 5 --n-matter 25 --n-keywords 15 --n-docs-train 150"
                        " --n-docs-test 50 --n-groups 3",
                    dir);
  REQUIRE(r2.exit_code == 0);
  CHECK(read_file(dir.path() / "a" / "train.jsonl") ==
        read_file(dir.path() / "b" / "train.jsonl"));

  // an explicit flag beats the file value
  auto r3 = run_cli("synth --out " + (dir.path() / "c").string() + " --config " +
                        cfg.string() + " --seed 6",
                    dir);
  REQUIRE(r3.exit_code == 0);
  CHECK(read_file(dir.path() / "a" / "train.jsonl") !=
        read_file(dir.path() / "c" / "train.jsonl"));

  auto bad = dir.write("bad.cfg", "bogus-key=1\n");
  auto r4 = run_cli("synth --out " + (dir.path() / "d").string() + " --config " +
                        bad.string(),
                    dir);
  CHECK(r4.exit_code == 1);
  CHECK(r4.output.find("bogus-key") != std::string::npos);
}

TEST_CASE("HYPOLINK_SEED is the default-seed fallback") {
  TempDir dir;
  std::string size_flags =
      " --n-matter 25 --n-keywords 15 --n-docs-train 150 --n-docs-test 50 --n-groups 3";
  auto log = dir.file("env.log");
  std::string cmd = "HYPOLINK_SEED=5 " + std::string(HYPOLINK_CLI_PATH) +
                    " synth --out " + (dir.path() / "env").string() + size_flags +
                    " > " + log.string() + " 2>&1";
  REQUIRE(std::system(cmd.c_str()) == 0);
  auto r = run_cli("synth --out " + (dir.path() / "flag").string() + " --seed 5" +
                       size_flags,
                   dir);
  REQUIRE(r.exit_code == 0);
  CHECK(read_file(dir.path() / "env" / "train.jsonl") ==
        read_file(dir.path() / "flag" / "train.jsonl"));
}

TEST_CASE("synth and stats subcommands work together") {
  TempDir dir;
  auto r1 = run_cli("synth --out " + dir.path().string() +
                        " --seed 4 --n-matter 25 --n-keywords 15 --n-docs-train 200"
                        " --n-docs-test 60 --n-groups 3",
                    dir);
  REQUIRE(r1.exit_code == 0);
  REQUIRE(std::filesystem::exists(dir.file("train.jsonl")));

  auto r2 = run_cli("extract --corpus " + dir.file("train.jsonl").string() + " --out " +
                        dir.file("terms.jsonl").string(),
                    dir);
  REQUIRE(r2.exit_code == 0);
  auto r3 = run_cli("stats --terms " + dir.file("terms.jsonl").string() + " --out-dir " +
                        dir.path().string(),
                    dir);
  CHECK(r3.exit_code == 0);
  CHECK(r3.output.find("slope") != std::string::npos);
  CHECK(std::filesystem::exists(dir.file("appearance_hist.csv")));
  CHECK(std::filesystem::exists(dir.file("cumulative_loglog.csv")));

  // dimension report against a built graph
  auto r4 = run_cli("build --terms " + dir.file("terms.jsonl").string() +
                        " --graph-out " + dir.file("g.txt").string() +
                        " --min-keyword-count 2",
                    dir);
  REQUIRE(r4.exit_code == 0);
  auto r5 = run_cli("stats --terms " + dir.file("terms.jsonl").string() +
                        " --graph-in " + dir.file("g.txt").string() + " --out-dir " +
                        dir.path().string(),
                    dir);
  CHECK(r5.exit_code == 0);
  CHECK(r5.output.find("R: ") != std::string::npos);
  CHECK(r5.output.find("candidates") != std::string::npos);
}
