#include <gtest/gtest.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "tsn/io.hpp"
#include "tsn_cli/cli.hpp"

namespace tsn {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("tsn_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int run(std::vector<std::string> args) {
    args.insert(args.begin(), "tsn");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    report_ = out.str().empty() ? Json() : Json::parse(out.str());
    errors_ = err.str();
    return code;
  }

  void write(const std::string& name, const std::string& text) { std::ofstream(path(name)) << text; }

  fs::path dir_;
  Json report_;
  std::string errors_;
};

TEST_F(CliTest, ValidateWellFormed) {
  write("ok.json", R"({"directed": true, "variant": "edge", "T": 1, "vertices": ["a", "b"],
    "edges": [{"u": "a", "v": "b", "w": 1, "times": [1]}], "demands": [{"a": "a", "b": "b", "t": 1}]})");
  EXPECT_EQ(run({"validate", "-i", path("ok.json")}), 0);
}

TEST_F(CliTest, ValidateMalformed) {
  write("bad.json", "{not json");
  EXPECT_EQ(run({"validate", "-i", path("bad.json")}), 2);
  EXPECT_FALSE(errors_.empty());
  EXPECT_TRUE(report_.contains("error"));
}

TEST_F(CliTest, Example1Digest) {
  ASSERT_EQ(run({"gen", "--kind", "example1", "-o", path("ex1.json")}), 0);
  ASSERT_EQ(run({"validate", "-i", path("ex1.json")}), 0);
  const Json& d = report_.at("instance");
  EXPECT_EQ(d.at("directed"), true);
  EXPECT_EQ(d.at("acyclic"), true);
  EXPECT_EQ(d.at("T"), 2);
  EXPECT_EQ(d.at("demands"), 2);
}

TEST_F(CliTest, SolveThenVerify) {
  ASSERT_EQ(run({"gen", "--kind", "example1", "-o", path("ex1.json")}), 0);
  for (const std::string method : {"brute", "bb"}) {
    ASSERT_EQ(run({"solve", "-i", path("ex1.json"), "--method", method, "-o", path(method + ".json")}), 0);
    EXPECT_EQ(report_.at("cost"), "1");
    EXPECT_TRUE(report_.at("stats").contains("nodes"));
    EXPECT_EQ(run({"verify", "-i", path("ex1.json"), "-s", path(method + ".json")}), 0);
    EXPECT_EQ(report_.at("verified"), true);
  }
}

TEST_F(CliTest, VerifyRejectsWrongCost) {
  ASSERT_EQ(run({"gen", "--kind", "example1", "-o", path("ex1.json")}), 0);
  ASSERT_EQ(run({"solve", "-i", path("ex1.json"), "--method", "bb", "-o", path("s.json")}), 0);
  Json s = read_json_file(path("s.json"));
  s["cost"] = "5";
  write_json_file(path("s.json"), s);
  EXPECT_NE(run({"verify", "-i", path("ex1.json"), "-s", path("s.json")}), 0);
}

TEST_F(CliTest, InfeasibleExitsOne) {
  write("inf.json", R"({"directed": true, "variant": "edge", "T": 2, "vertices": ["a", "b"],
    "edges": [{"u": "a", "v": "b", "w": 1, "times": [1]}], "demands": [{"a": "a", "b": "b", "t": 2}]})");
  EXPECT_EQ(run({"solve", "-i", path("inf.json"), "--method", "bb", "-o", path("s.json")}), 1);
  EXPECT_EQ(report_.at("feasible"), false);
  EXPECT_FALSE(report_.contains("cost"));
  EXPECT_EQ(run({"verify", "-i", path("inf.json"), "-s", path("s.json")}), 0);
}

TEST_F(CliTest, ApproxReportsCharikarCalls) {
  ASSERT_EQ(run({"gen", "--kind", "random", "--seed", "3", "--monotonic", "--single-source", "-o", path("r.json")}),
            0);
  ASSERT_EQ(run({"approx", "-i", path("r.json"), "--method", "charikar", "--level", "2", "-o", path("c.json")}), 0);
  EXPECT_GT(report_.at("stats").at("recursion_calls").get<int>(), 0);
  EXPECT_EQ(run({"verify", "-i", path("r.json"), "-s", path("c.json")}), 0);
  ASSERT_EQ(run({"approx", "-i", path("r.json"), "--method", "union", "-o", path("u.json")}), 0);
  EXPECT_EQ(run({"verify", "-i", path("r.json"), "-s", path("u.json")}), 0);
}

TEST_F(CliTest, ReduceWritesMap) {
  ASSERT_EQ(run({"gen", "--kind", "example1", "-o", path("ex1.json")}), 0);
  for (const std::string to : {"node", "edge", "node_and_edge", "simple"}) {
    EXPECT_EQ(run({"reduce", "--to", to, "-i", path("ex1.json"), "-o", path(to + ".json"), "--map",
                   path(to + ".map.json")}),
              0);
    EXPECT_TRUE(fs::exists(path(to + ".map.json")));
  }
  EXPECT_EQ(run({"reduce", "--to", "dst", "-i", path("ex1.json"), "-o", path("d.json")}), 2);
}

TEST_F(CliTest, IlpExport) {
  ASSERT_EQ(run({"gen", "--kind", "example1", "-o", path("ex1.json")}), 0);
  ASSERT_EQ(run({"solve", "-i", path("ex1.json"), "--method", "ilp-export", "--lp", path("m.lp")}), 0);
  std::ifstream in(path("m.lp"));
  std::string first;
  std::getline(in, first);
  EXPECT_EQ(first.rfind("\\", 0), 0u);
}

TEST_F(CliTest, UnknownMethodIsInputError) {
  ASSERT_EQ(run({"gen", "--kind", "example1", "-o", path("ex1.json")}), 0);
  EXPECT_EQ(run({"solve", "-i", path("ex1.json"), "--method", "magic"}), 2);
}

TEST_F(CliTest, BenchEmptyMethodListIsHeaderOnly) {
  ASSERT_EQ(run({"bench", "--kind", "example1", "--methods", "", "-o", path("b.csv")}), 0);
  std::ifstream in(path("b.csv"));
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_EQ(text.str(), "kind,seed,vertices,edges,demands,method,cost,optimum,ratio\n");
}

TEST_F(CliTest, BenchYesBatch) {
  ASSERT_EQ(run({"bench", "--kind", "lc-yes", "--left", "2", "--right", "2", "--degree", "1", "--labels", "2",
                 "--seeds", "1-4", "--methods", "bb,union", "-o", path("b.csv")}),
            0);
  std::ifstream in(path("b.csv"));
  std::string line;
  std::getline(in, line);
  int rows = 0;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream fields(line);
    for (std::string cell; std::getline(fields, cell, ',');) cells.push_back(cell);
    ASSERT_GE(cells.size(), 9u);
    EXPECT_EQ(cells[7], "2");
    if (cells[5] == "bb") { EXPECT_EQ(cells[6], "2"); }
    if (cells[5] == "union") { EXPECT_LE(parse_rational(cells[8]), Rational(std::stoi(cells[4]))); }
    ++rows;
  }
  EXPECT_EQ(rows, 8);
}

TEST_F(CliTest, GenEmbedsSeed) {
  ASSERT_EQ(run({"gen", "--kind", "phlc-nosat", "--k", "3", "--seed", "12", "-o", path("n.json")}), 0);
  EXPECT_EQ(report_.at("seed"), 12);
}

}  // namespace
}  // namespace tsn
