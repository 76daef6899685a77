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

#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bcg/error.hpp"
#include "bcg/payoff.hpp"
#include "bcg/seq.hpp"
#include "bcg/tree.hpp"

namespace bcg {

// Anything the backward-induction solver can walk: a root state, the player
// to move, an optional verdict, and the legal moves in ascending label order.
// A non-decided state without legal moves is a forced exit: the mover loses.
template <class M>
concept GameModel = std::totally_ordered<typename M::State> &&
    requires(const M& m, const typename M::State& s) {
      { m.initial() } -> std::convertible_to<typename M::State>;
      { m.to_move(s) } -> std::same_as<Player>;
      { m.decided(s) } -> std::same_as<std::optional<Player>>;
      { m.successors(s) } -> std::same_as<std::vector<std::pair<Label, typename M::State>>>;
    };

// G(T, φ) on a finite game tree, cut at `decision_depth` plies: a play that
// stays in the tree that long is decided by the clopen payoff, any earlier
// play ends with the first player to leave the tree losing.
class Game {
 public:
  using State = FiniteTree::NodeId;

  Game(const FiniteTree& tree, ClopenAntichain payoff, std::size_t decision_depth)
      : arena_(truncate(tree, decision_depth)), payoff_(std::move(payoff)), depth_(decision_depth) {
    if (auto s = payoff_.first_undecided(arena_, depth_)) {
      throw SolverError(SolverError::Kind::UndecidedGame,
                        "UndecidedGame: payoff does not decide " + format_seq(*s));
    }
  }

  Game(const FiniteTree& tree, ClopenAntichain payoff)
      : Game(tree, payoff, payoff.decision_depth()) {}

  // Exit-only game on a wellfounded tree: the payoff is never consulted.
  static Game pure_exit(const FiniteTree& tree) {
    return Game(tree, ClopenAntichain::constant(Player::II), tree.height() + 1);
  }

  const FiniteTree& tree() const noexcept { return arena_; }
  const ClopenAntichain& payoff() const noexcept { return payoff_; }
  std::size_t decision_depth() const noexcept { return depth_; }

  // Every play is decided within this many plies.
  std::size_t horizon() const noexcept { return std::max(depth_, arena_.height() + 1); }

  bool is_pure_exit() const noexcept { return depth_ > arena_.height(); }

  State initial() const noexcept { return 0; }
  Player to_move(State s) const { return mover_at(arena_.node(s).size()); }

  std::optional<Player> decided(State s) const {
    const Seq& n = arena_.node(s);
    if (n.size() == depth_) return payoff_.winner_at(n);
    return std::nullopt;
  }

  std::vector<std::pair<Label, State>> successors(State s) const {
    std::vector<std::pair<Label, State>> out;
    if (arena_.node(s).size() >= depth_) return out;
    for (auto c : arena_.children(s)) out.emplace_back(arena_.node(c).back(), c);
    return out;
  }

  // Winner of the play ending at arena node `n` (a terminal or a leaf).
  Player outcome_at(const Seq& n) const {
    if (n.size() == depth_) return *payoff_.winner_at(n);
    return opponent(mover_at(n.size()));
  }

 private:
  FiniteTree arena_;
  ClopenAntichain payoff_;
  std::size_t depth_;
};

static_assert(GameModel<Game>);

}  // namespace bcg
