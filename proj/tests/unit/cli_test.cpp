#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

struct Result {
  int code;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string fixture(const char* name) { return std::string(FIXTURE_DIR) + "/" + name; }
std::string tmp(const char* name) { return ::testing::TempDir() + name; }

}  // namespace

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("stats --no-such-flag " + fixture("two_bookmarks.jsonl")).code, 2);
  EXPECT_EQ(run("committee " + fixture("committee_a.tsv")).code, 2);
}

TEST(Cli, RuntimeErrorsExitOne) {
  const std::string bad = tmp("fs_cli_bad.jsonl");
  std::ofstream(bad) << "this is not json\n";
  EXPECT_EQ(run("stats " + bad).code, 1);
}

TEST(Cli, StatsOnTwoBookmarkFixture) {
  auto r = run("stats " + fixture("two_bookmarks.jsonl"));
  ASSERT_EQ(r.code, 0);
  auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["data"]["resources"]["annotated"], 1);
  EXPECT_EQ(doc["data"]["users"]["annotated"], 2);
  EXPECT_EQ(doc["results"]["tags"], 2);
  EXPECT_EQ(doc["results"]["tags_per_bookmark"], 1.5);
}

TEST(Cli, CommitteeWorkedExample) {
  auto r = run("committee --no-normalize " + fixture("committee_a.tsv") + " " + fixture("committee_b.tsv"));
  ASSERT_EQ(r.code, 0);
  auto doc = nlohmann::json::parse(r.out);
  const auto& row = doc["results"]["instances"][0];
  EXPECT_EQ(row["prediction"], "category2");
  EXPECT_NEAR(row["scores"][0].get<double>(), 1.7, 1e-12);
  EXPECT_NEAR(row["scores"][1].get<double>(), 2.1, 1e-12);
  EXPECT_NEAR(row["scores"][2].get<double>(), 1.8, 1e-12);
  EXPECT_EQ(doc["meta"]["config"]["normalize"], false);
}

TEST(Cli, GenIsByteIdentical) {
  auto a = run("gen --regime none --seed 7");
  auto b = run("gen --regime none --seed 7");
  ASSERT_EQ(a.code, 0);
  EXPECT_FALSE(a.out.empty());
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, run("gen --regime none --seed 8").out);
  EXPECT_EQ(run("gen --set warp=9").code, 1);
  EXPECT_EQ(run("gen --set novalue").code, 2);
}

TEST(Cli, GenTrainEvalSweep) {
  const auto b = tmp("fs_cli_b.jsonl"), c = tmp("fs_cli_c.tsv"), m = tmp("fs_cli_m.json"), mg = tmp("fs_cli_mg.tsv");
  ASSERT_EQ(run("gen --params " + fixture("gen_params.txt") + " --categories-out " + c + " -o " + b).code, 0);
  ASSERT_EQ(run("train " + b + " --categories " + c + " --model " + m + " --epochs 10 --scheme ovo").code, 0);
  auto e = run("eval " + b + " --model " + m + " --categories " + c + " --margins " + mg);
  ASSERT_EQ(e.code, 0);
  auto doc = nlohmann::json::parse(e.out);
  EXPECT_EQ(doc["meta"]["config"]["scheme"], "one-vs-one");
  std::ifstream margins(mg);
  EXPECT_TRUE(margins.good());
  auto s = run("sweep " + b + " --categories " + c + " --sizes 4,8 --runs 2 --epochs 5 --min-category-resources 1");
  ASSERT_EQ(s.code, 0);
  auto sweep = nlohmann::json::parse(s.out);
  EXPECT_EQ(sweep["results"]["sizes"].size(), 2u);
  EXPECT_EQ(run("sweep " + b + " --categories " + c + " --sizes 4000").code, 1);
  EXPECT_EQ(run("behavior " + b + " --measure orphan --percent 20,80").code, 0);
  EXPECT_EQ(run("represent " + b + " --scheme ranks-topk --k 3").code, 0);
  EXPECT_EQ(run("weight " + b + " --correlate").code, 0);
  EXPECT_EQ(run("ingest " + b).code, 0);
}
