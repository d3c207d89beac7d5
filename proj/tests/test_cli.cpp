#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

using tvcat::cli::run_command;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& file) { return std::string(TVCAT_DATA_DIR) + "/ord/" + file; }

std::filesystem::path scratch(const std::string& name, const std::string& text) {
  const auto dir = std::filesystem::temp_directory_path() / "tvcat_cli_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST(Cli, ClassifyOrderEmbedding) {
  const Result r = run({"classify", data("top.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "L: yes (fully faithful, dense)\nR: no\n");
}

TEST(Cli, ClassifyCollapse) {
  const Result r = run({"classify", data("collapse.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("L: no"), std::string::npos);
  EXPECT_NE(r.out.find("R: yes"), std::string::npos);
}

TEST(Cli, ClassifyJson) {
  const Result r = run({"--output", "json", "classify", data("top.json")});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["L"]["member"], true);
  EXPECT_EQ(j["R"]["member"], false);
}

TEST(Cli, FactorExample) {
  const Result r = run({"factor", data("top.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("K(top): 3 points"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("L(top): * -> ([1],1)"), std::string::npos) << r.out;
}

TEST(Cli, FactorBundleChecksBack) {
  const auto out = std::filesystem::temp_directory_path() / "tvcat_cli_test" / "factor.json";
  std::filesystem::create_directories(out.parent_path());
  ASSERT_EQ(run({"factor", data("top.json"), "--write", out.string()}).code, 0);
  const Result r = run({"check", out.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("all laws hold"), std::string::npos);
}

TEST(Cli, LiftSolvesWithLeastFiller) {
  const Result r = run({"lift", data("lift_top.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("d: 0 -> 0, 1 -> 1"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("2 fillers"), std::string::npos) << r.out;
}

TEST(Cli, LiftOutsideLeftClassExitsOne) {
  const Result r = run({"lift", data("lift_collapse.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE((r.out + r.err).find("not in L"), std::string::npos);
}

TEST(Cli, CheckReportsTransitivityWitness) {
  const auto path = scratch("nt.json", R"({"name": "nt", "quantale": "boolean",
    "monad": "identity", "carrier": ["a", "b", "c"],
    "structure": [["a", "a", "1"], ["b", "b", "1"], ["c", "c", "1"],
                  ["a", "b", "1"], ["b", "c", "1"]], "default": "bot"})");
  const Result r = run({"check", path.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("transitivity"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("(a,b,c)"), std::string::npos) << r.err;
}

TEST(Cli, UnknownElementIsAnInputError) {
  const auto path = scratch("unknown.json", R"({"name": "u", "quantale": "boolean",
    "monad": "identity", "carrier": ["a"], "structure": [["a", "q", "1"]], "default": "bot"})");
  const Result r = run({"check", path.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("'q'"), std::string::npos) << r.err;
}

TEST(Cli, SizeCapExitCode) {
  const Result r = run({"--max-space", "2", "presheaves", data("chain2.json")});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("size cap"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"classify"}).code, 2);
  EXPECT_EQ(run({"classify", data("top.json"), "--class", "finite"}).code, 2);
  EXPECT_EQ(run({"check", "/nonexistent/file.json"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, PresheavesAndCompletion) {
  const Result p = run({"presheaves", data("chain2.json")});
  EXPECT_EQ(p.code, 0);
  EXPECT_EQ(p.out, "3 presheaves on two\n  [0;0]\n  [1;0]  = 0^*\n  [1;1]  = 1^*\n");
  const Result c = run({"complete", data("chain2.json")});
  EXPECT_EQ(c.code, 0);
  EXPECT_NE(c.out.find("complete: yes"), std::string::npos);
  const Result d = run({"complete", data("point.json"), "-i", data("chain2.json")});
  EXPECT_EQ(d.code, 0);
}

TEST(Cli, SeedCorpusResolvesNames) {
  const Result r = run({"--seed-corpus", std::string(TVCAT_DATA_DIR) + "/ord", "classify", "top"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "L: yes (fully faithful, dense)\nR: no\n");
}

TEST(Cli, VerifySmallestCorpusPasses) {
  const Result r = run({"verify-paper", "--max-size", "1"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("result: pass, 12/12 rows"), std::string::npos);
}

TEST(Cli, CorruptBuiltinFailsOnlyTheQuantaleRow) {
  const Result r =
      run({"--output", "json", "verify-paper", "--max-size", "1", "--corrupt-builtin", "boolean"});
  EXPECT_EQ(r.code, 1);
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j["rows"].size(), 12u);
  for (const auto& row : j["rows"])
    EXPECT_EQ(row["status"], row["id"] == "quantale-laws" ? "fail" : "pass") << row["id"];
  EXPECT_EQ(run({"verify-paper", "--corrupt-builtin", "nope"}).code, 2);
}
