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

#include "bcg/io.hpp"
#include "bcg/lab.hpp"

namespace bcg {
namespace {

FiniteTree T(std::set<Seq> s) { return FiniteTree::from_nodes(s); }

TEST(Io, TreeExamples) {
  EXPECT_EQ(parse_tree("tree v1\n1\n2\n1 3\n"), T({{}, {1}, {2}, {1, 3}}));
  EXPECT_EQ(serialize_tree(T({{}})), "tree v1\n");
  try {
    parse_tree("tree v1\n1 3\n");
    FAIL();
  } catch (const TreeError& e) {
    EXPECT_EQ(e.kind(), TreeError::Kind::MissingPrefix);
    EXPECT_EQ(e.node(), (Seq{1, 3}));
  }
}

TEST(Io, TreeSyntaxErrors) {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      parse_tree(text);
    } catch (const SyntaxError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("tree v2\n"), 1u);
  EXPECT_EQ(line_of(""), 1u);
  EXPECT_EQ(line_of("tree v1\n1\n1\n"), 3u);
  EXPECT_EQ(line_of("tree v1\n1\nx\n"), 3u);
  EXPECT_EQ(line_of("tree v1\n-1\n"), 2u);
  EXPECT_THROW(parse_tree("tree v1\n1\n2\n3\n"), TreeError);
}

TEST(Io, TreeOrderAndBlankLinesDoNotMatter) {
  EXPECT_EQ(parse_tree("tree v1\n\n1 3\n2\n\n1\n"), T({{}, {1}, {2}, {1, 3}}));
  EXPECT_EQ(serialize_tree(parse_tree("tree v1\n2\n1 3\n1\n")), "tree v1\n1\n1 3\n2\n");
}

TEST(Io, ClopenPayoff) {
  const std::string text = "payoff clopen v1\nI: 0 1\nII: 1\ndefault: I\n";
  AnyPayoff p = parse_payoff(text);
  ASSERT_TRUE(std::holds_alternative<ClopenAntichain>(p));
  const auto& c = std::get<ClopenAntichain>(p);
  EXPECT_EQ(c.winner_at({0, 1}), Player::I);
  EXPECT_EQ(c.winner_at({1, 5}), Player::II);
  EXPECT_EQ(c.default_winner(), Player::I);
  EXPECT_EQ(serialize_payoff(p), text);
  EXPECT_EQ(serialize_payoff(parse_payoff("payoff clopen v1\nI:\n")), "payoff clopen v1\nI:\n");
  EXPECT_THROW(parse_payoff("payoff clopen v1\nI: 1\nII: 1 2\n"), PayoffError);
  EXPECT_THROW(parse_payoff("payoff clopen v1\nIII: 1\n"), SyntaxError);
  EXPECT_THROW(parse_payoff("payoff clopen v1\ndefault: I\ndefault: II\n"), SyntaxError);
}

TEST(Io, DiffPayoff) {
  const std::string text = "payoff diff v1 k=2 complement\nlevel 1:\n.\n1\nlevel 2:\n1 2\n";
  AnyPayoff p = parse_payoff(text);
  ASSERT_TRUE(std::holds_alternative<DiffPayoff>(p));
  const auto& d = std::get<DiffPayoff>(p);
  EXPECT_EQ(d.k(), 2u);
  EXPECT_TRUE(d.complemented);
  EXPECT_EQ(d.levels[0].generators, (std::set<Seq>{{}, {1}}));
  EXPECT_EQ(serialize_payoff(p), text);
  EXPECT_THROW(parse_payoff("payoff diff v1 k=2\nlevel 1:\n1\n"), SyntaxError);
  EXPECT_THROW(parse_payoff("payoff diff v1 k=0\n"), SyntaxError);
  EXPECT_THROW(parse_payoff("payoff diff v1 k=1\n1\n"), SyntaxError);
  EXPECT_THROW(parse_payoff("payoff diff v1 k=1\nlevel 2:\n"), SyntaxError);
}

TEST(Io, Strategy) {
  RestrictedStrategy s{Player::II, {{}, {1}, {2}, {2, 1}}};
  const std::string text = serialize_strategy(s);
  EXPECT_EQ(text, "strategy v1 owner=II\n1\n2\n2 1\n");
  EXPECT_EQ(parse_strategy(text), s);
  EXPECT_EQ(parse_strategy("strategy v1 owner=I\n"), (RestrictedStrategy{Player::I, {{}}}));
  EXPECT_THROW(parse_strategy("strategy v1 owner=III\n"), SyntaxError);
  EXPECT_THROW(parse_strategy("strategy v1 owner=I\n1 1\n"), StrategyError);
}

TEST(Io, RoundTripsOnCorpus) {
  for (const auto& t : enumerate_trees(9, true)) {
    const std::string text = serialize_tree(t);
    EXPECT_EQ(parse_tree(text), t);
    EXPECT_EQ(serialize_tree(parse_tree(text)), text);
    SolveResult r = solve(Game::pure_exit(t));
    const std::string st = serialize_strategy(r.strategy);
    EXPECT_EQ(parse_strategy(st), r.strategy);
    for (const auto& phi : lab::random_payoffs(t, 2, 3, 1 + t.size() % 4)) {
      const std::string pt = serialize_payoff(phi);
      EXPECT_EQ(std::get<ClopenAntichain>(parse_payoff(pt)), phi);
      EXPECT_EQ(serialize_payoff(parse_payoff(pt)), pt);
    }
  }
}

TEST(Io, ReadFileReportsMissingFiles) { EXPECT_THROW(read_file("/nonexistent/bcg/file"), Error); }

}  // namespace
}  // namespace bcg
