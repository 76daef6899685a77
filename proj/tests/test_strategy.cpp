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

#include "bcg/strategy.hpp"
#include "oracles.hpp"

namespace bcg {
namespace {

FiniteTree T(std::set<Seq> s) { return FiniteTree::from_nodes(s); }
RestrictedStrategy S(Player owner, std::set<Seq> nodes) { return {owner, std::move(nodes)}; }

TEST(Strategy, ValidateRestrictedExamples) {
  FiniteTree t = T({{}, {1}, {2}});
  EXPECT_NO_THROW(validate_restricted(t, S(Player::I, {{}, {1}})));
  auto v = check_restricted(t, S(Player::I, {{}, {1}, {2}}));
  ASSERT_TRUE(v);
  EXPECT_EQ(v->kind, StrategyError::Kind::NotExactlyOne);
  EXPECT_EQ(v->node, Seq{});
  v = check_restricted(t, S(Player::II, {{}, {1}}));
  ASSERT_TRUE(v);
  EXPECT_EQ(v->kind, StrategyError::Kind::MissingOpponentOption);
  EXPECT_THROW(validate_restricted(t, S(Player::II, {{}, {1}})), StrategyError);
  EXPECT_EQ(check_restricted(t, S(Player::I, {{1}}))->kind, StrategyError::Kind::MissingRoot);
  EXPECT_EQ(check_restricted(t, S(Player::I, {{}, {1}, {1, 5}}))->kind, StrategyError::Kind::NotInGame);
}

TEST(Strategy, EnumerateRestrictedExamples) {
  EXPECT_EQ(enumerate_restricted(T({{}, {1}, {2}}), Player::I).size(), 2u);
  auto ii = enumerate_restricted(T({{}, {1}, {2}}), Player::II);
  ASSERT_EQ(ii.size(), 1u);
  EXPECT_EQ(ii[0].nodes, (std::set<Seq>{{}, {1}, {2}}));
  FiniteTree t = T({{}, {1}, {2}, {1, 1}, {1, 2}});
  EXPECT_EQ(enumerate_restricted(t, Player::II).size(), 2u);
  EXPECT_EQ(count_restricted(t, Player::II), 2u);
}

TEST(Strategy, EnumerationMatchesSubsetOracle) {
  for (const auto& t : enumerate_trees(6, true)) {
    for (Player owner : {Player::I, Player::II}) {
      for (std::size_t depth : {std::size_t{1}, std::size_t{2}, std::size_t{3}, kUnbounded}) {
        auto got = enumerate_restricted(t, owner, depth);
        std::set<std::set<Seq>> mine;
        for (const auto& s : got) {
          EXPECT_EQ(s.owner, owner);
          EXPECT_FALSE(check_restricted(t, s, depth).has_value());
          mine.insert(s.nodes);
        }
        auto ref = oracle::restricted_by_subsets(t.node_set(), owner, depth);
        EXPECT_EQ(mine.size(), got.size());
        EXPECT_EQ(mine, std::set<std::set<Seq>>(ref.begin(), ref.end()));
        EXPECT_EQ(count_restricted(t, owner, depth), ref.size());
        EXPECT_EQ(count_restricted(t, owner, depth), oracle::restricted_count_formula(t.node_set(), owner, depth));
      }
    }
  }
}

TEST(Strategy, ProductRestrictedExamples) {
  EXPECT_EQ(product_restricted(S(Player::I, {{}, {1}}), S(Player::II, {{}, {1}, {2}})), Seq{1});
  EXPECT_EQ(product_restricted(S(Player::I, {{}, {1}, {1, 3}, {1, 4}}), S(Player::II, {{}, {1}, {1, 4}})),
            (Seq{1, 4}));
  EXPECT_EQ(product_restricted(S(Player::I, {{}}), S(Player::II, {{}})), Seq{});
}

TEST(Strategy, ProductRestrictedIsTheMoveByMovePlay) {
  for (const auto& t : enumerate_trees(6, true)) {
    auto si = enumerate_restricted(t, Player::I);
    auto sii = enumerate_restricted(t, Player::II);
    for (const auto& a : si) {
      for (const auto& b : sii) {
        // Each owner's unique choice, followed from the root.
        Seq play;
        for (;;) {
          const auto& mine = mover_at(play.size()) == Player::I ? a : b;
          std::optional<Seq> next;
          for (const Seq& c : t.successors(play)) {
            if (mine.contains(c)) next = c;
          }
          if (!next || !a.contains(*next) || !b.contains(*next)) break;
          play = *next;
        }
        EXPECT_EQ(product_restricted(a, b), play);
        // The intersection is exactly the prefixes of that play.
        std::size_t common = 0;
        for (const Seq& n : a.nodes) common += b.contains(n);
        EXPECT_EQ(common, play.size() + 1);
      }
    }
  }
}

TEST(Strategy, ProductRegularExamples) {
  RegularStrategy one{Player::I, {}, Label{1}}, two{Player::II, {}, Label{2}};
  EXPECT_EQ(product_regular(one, two, 4), (Seq{1, 2, 1, 2}));
  RegularStrategy sigma{Player::I, {{{}, 5}, {{5, 0}, 5}}, std::nullopt};
  RegularStrategy tau{Player::II, {{{5}, 0}}, std::nullopt};
  EXPECT_EQ(product_regular(sigma, tau, 3), (Seq{5, 0, 5}));
  EXPECT_THROW(product_regular(sigma, tau, 4), StrategyError);
  FiniteTree t = T({{}, {1}});
  RegularStrategy exit_now{Player::I, {{{}, kExit}}, Label{0}};
  RegularStrategy zero{Player::II, {}, Label{0}};
  EXPECT_EQ(product_regular(exit_now, zero, 3, &t), (Seq{2, 0, 0}));
  EXPECT_FALSE(t.contains({2}));
}

TEST(Strategy, RestrictedToRegularExamples) {
  FiniteTree t = T({{}, {1}, {2}});
  RegularStrategy r = restricted_to_regular(t, S(Player::I, {{}, {1}}));
  EXPECT_EQ(r.at({}), 1u);
  EXPECT_EQ(r.at({2, 9}), 0u);
  RegularStrategy z = restricted_to_regular(T({{}}), S(Player::II, {{}}));
  EXPECT_TRUE(z.moves.empty());
  EXPECT_EQ(z.at({3}), 0u);
  FiniteTree d2 = T({{}, {1}, {2}, {2, 1}, {2, 2}, {1, 1}});
  RegularStrategy right = restricted_to_regular(d2, S(Player::II, {{}, {1}, {2}, {2, 2}, {1, 1}}));
  EXPECT_EQ(right.at({2}), 2u);
  EXPECT_EQ(right.at({1}), 1u);
}

TEST(Strategy, QuotientRegularCountAndExit) {
  FiniteTree t = T({{}, {1}, {2}});
  // I chooses 1, 2 or EXIT at the root.
  EXPECT_EQ(count_quotient_regular(t, Player::I, 2), 3u);
  auto all = enumerate_quotient_regular(t, Player::I, 2);
  ASSERT_EQ(all.size(), 3u);
  std::set<Label> roots;
  for (const auto& s : all) roots.insert(s.at({}));
  EXPECT_EQ(roots, (std::set<Label>{1, 2, kExit}));
  EXPECT_EQ(realize_move(&t, {}, kExit), 3u);
  EXPECT_EQ(realize_move(&t, {1}, kExit), 0u);
  EXPECT_EQ(realize_move(&t, {9}, kExit), 0u);
  for (const auto& t2 : enumerate_trees(5, true)) {
    for (Player owner : {Player::I, Player::II}) {
      EXPECT_EQ(enumerate_quotient_regular(t2, owner, t2.height() + 1).size(),
                count_quotient_regular(t2, owner, t2.height() + 1));
    }
  }
}

}  // namespace
}  // namespace bcg
