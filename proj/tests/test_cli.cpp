// Copyright 2026 The bcg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace bcg::cli {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "bcg");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("bcg_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& text) {
    fs::path p = dir_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, SolveJson) {
  auto t = file("t.txt", "tree v1\n0\n1\n0 0\n0 1\n1 0\n1 1\n");
  auto p = file("p.txt", "payoff clopen v1\nI: 0\ndefault: II\n");
  CliRun r = run({"solve", "--tree", t, "--payoff", p, "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["winner"], "I");
  EXPECT_EQ(j["strategy_nodes"], json::parse("[[],[0]]"));
  EXPECT_EQ(j["oracle_checked"], true);
  EXPECT_EQ(j["def3_def4_agree"], true);
  EXPECT_GE(j["explored"].get<int>(), 1);
}

TEST_F(CliTest, SolveTextAndStrategyFile) {
  auto t = file("t.txt", "tree v1\n1\n2\n1 3\n");
  CliRun r = run({"solve", "--tree", t, "--out", path("s.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("winner: I"), std::string::npos);
  CliRun f = run({"fmt", "--strategy", path("s.txt")});
  EXPECT_EQ(f.code, 0);
  EXPECT_EQ(f.out, "strategy v1 owner=I\n2\n");
  CliRun d3 = run({"solve", "--tree", t, "--semantics", "def3", "--json"});
  EXPECT_EQ(json::parse(d3.out)["winner"], "I");
}

TEST_F(CliTest, SolveWithDiffPayoffAndDepth) {
  auto t = file("t.txt", "tree v1\n1\n2\n1 1\n1 2\n2 2\n");
  auto p = file("p.txt", "payoff diff v1 k=2\nlevel 1:\n1\nlevel 2:\n1 2\n");
  CliRun r = run({"solve", "--tree", t, "--payoff", p, "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  // I plays 1 and II answers 2, landing in the excluded level.
  EXPECT_EQ(json::parse(r.out)["winner"], "II");
}

TEST_F(CliTest, ReduceWithExtract) {
  auto t = file("t.txt", "tree v1\n1\n1 1\n");
  CliRun r = run({"reduce", "--tree", t, "--extract", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["winner"], "II");
  EXPECT_EQ(j["certified"], true);
  EXPECT_EQ(j["max_legal_moves"], 2);
  EXPECT_EQ(j["branch"]["f"], json::parse("[1,1]"));
  EXPECT_EQ(j["branch"]["fail_index"], 2);
  EXPECT_EQ(j["branch"]["bound_holds"], true);
  for (const char* k : {"t", "u0", "v", "u_prime", "winner", "rule_fired"}) EXPECT_TRUE(j["transcript"].contains(k));
  EXPECT_EQ(j["transcript"]["winner"], "II");
}

TEST_F(CliTest, ReduceShiftsZeroLabels) {
  auto t = file("t.txt", "tree v1\n0\n1\n");
  CliRun r = run({"reduce", "--tree", t, "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["zero_free_applied"], true);
  EXPECT_EQ(j["winner"], "II");
}

TEST_F(CliTest, Extract) {
  auto t = file("t.txt", "tree v1\n1\n");
  CliRun r = run({"extract", "--tree", t, "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["f"], json::parse("[1]"));
  EXPECT_EQ(j["fail_index"], 1);
  EXPECT_EQ(j["theta"], json::parse("[true,false]"));
}

TEST_F(CliTest, Embed) {
  auto t = file("t.txt", "tree v1\n1\n2\n1 3\n");
  auto p = file("p.txt", "payoff clopen v1\nII: 1 3\ndefault: I\n");
  CliRun r = run({"embed", "--tree", t, "--payoff", p, "--depth", "2", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["winner_source"], j["winner_range"]);
  EXPECT_EQ(j["pulled_back_certified"], true);
  EXPECT_EQ(j["range_tree"], "tree v1\n0\n0 0\n1\n");
}

TEST_F(CliTest, FmtCanonicalizes) {
  auto t = file("t.txt", "tree v1\n2\n\n1 3\n1\n");
  CliRun r = run({"fmt", "--tree", t});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "tree v1\n1\n1 3\n2\n");
  CliRun o = run({"fmt", "--tree", t, "--out", path("o.txt")});
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.out, "");
  EXPECT_EQ(run({"fmt", "--tree", path("o.txt")}).out, r.out);
}

TEST_F(CliTest, LabAllPass) {
  CliRun r = run({"lab", "--max-size", "6", "--seed", "7", "--suites", "oracle,def34"});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("suite oracle: PASS 760/760"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("suite def34: PASS 340/340"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("result: PASS"), std::string::npos);
  EXPECT_NE(r.err.find("wall-clock"), std::string::npos);
}

TEST_F(CliTest, LabJsonAndOutFile) {
  CliRun r = run({"lab", "--max-size", "4", "--payoffs-per-tree", "2", "--suites", "oracle,reduction", "--json",
               "--out", path("rep.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(path("rep.json"));
  auto j = json::parse(in);
  EXPECT_EQ(j["all_passed"], true);
  EXPECT_EQ(j["suites"].size(), 2u);
  EXPECT_EQ(j["suites"][0]["instances"], 16);
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"solve"}).code, 2);
  auto t = file("t.txt", "tree v1\n");
  EXPECT_EQ(run({"solve", "--tree", t, "--semantics", "def5"}).code, 2);
  EXPECT_EQ(run({"lab", "--suites", "oracle,bogus"}).code, 2);
  EXPECT_EQ(run({"lab", "--max-size", "many"}).code, 2);
  EXPECT_EQ(run({"fmt"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliTest, ValidationErrorsExitOne) {
  auto bad_tree = file("bad.txt", "tree v1\n1\n2\n3\n");
  CliRun r = run({"solve", "--tree", bad_tree});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("TooManySuccessors"), std::string::npos) << r.err;
  auto t = file("t.txt", "tree v1\n1\n1 1\n1 2\n");
  auto undecided = file("u.txt", "payoff clopen v1\nI: 1 1\n");
  EXPECT_EQ(run({"solve", "--tree", t, "--payoff", undecided}).code, 1);
  auto chain = file("c.txt", "payoff clopen v1\nI: 1\nII: 1 1\n");
  EXPECT_EQ(run({"solve", "--tree", t, "--payoff", chain}).code, 1);
  EXPECT_EQ(run({"solve", "--tree", path("missing.txt")}).code, 1);
  EXPECT_EQ(run({"fmt", "--strategy", file("s.txt", "strategy v1 owner=I\n1 2\n")}).code, 1);
}

TEST_F(CliTest, ReplayLabInstanceThroughSolve) {
  lab::CampaignConfig cfg;
  cfg.max_size = 4;
  cfg.payoffs_per_tree = 3;
  auto instances = lab::build_instances("oracle", cfg);
  for (std::size_t i = 0; i < instances.size(); i += 5) {
    const auto& in = instances[i];
    lab::Verdict v = lab::check_instance(in, cfg);
    auto t = file("t.txt", serialize_tree(in.tree));
    auto p = file("p.txt", lab::payoff_text(in));
    CliRun r = run({"solve", "--tree", t, "--payoff", p, "--depth", std::to_string(in.decision_depth), "--json"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(json::parse(r.out)["winner"], v.observed);
  }
}

}  // namespace
}  // namespace bcg::cli
