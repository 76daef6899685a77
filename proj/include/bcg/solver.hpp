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

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "bcg/error.hpp"
#include "bcg/game.hpp"
#include "bcg/seq.hpp"
#include "bcg/strategy.hpp"

namespace bcg {

struct SolveResult {
  Player winner = Player::I;
  RestrictedStrategy strategy;
  std::map<Seq, Player> values;
  std::size_t explored = 0;
};

// Memoized backward induction. Memo tables live in the solver instance, so
// independent instances can run concurrently.
template <GameModel M>
class Solver {
 public:
  using State = typename M::State;

  explicit Solver(const M& model) : model_(model) {}

  Player value(const State& s) {
    if (auto it = memo_.find(s); it != memo_.end()) return it->second;
    Player v;
    if (auto d = model_.decided(s)) {
      v = *d;
    } else {
      const Player mover = model_.to_move(s);
      v = opponent(mover);
      for (const auto& [label, next] : model_.successors(s)) {
        if (value(next) == mover) {
          v = mover;
          break;
        }
      }
    }
    memo_.emplace(s, v);
    return v;
  }

  std::size_t explored() const noexcept { return memo_.size(); }

  // Winner plus its restricted strategy: the leftmost winning move at the
  // winner's positions, every move at the opponent's.
  SolveResult solve() {
    SolveResult r;
    const State root = model_.initial();
    r.winner = value(root);
    r.strategy.owner = r.winner;
    r.strategy.nodes.clear();
    std::vector<std::pair<Seq, State>> stack{{Seq{}, root}};
    while (!stack.empty()) {
      auto [path, s] = std::move(stack.back());
      stack.pop_back();
      r.values[path] = value(s);
      r.strategy.nodes.insert(path);
      if (model_.decided(s)) continue;
      auto succ = model_.successors(s);
      for (const auto& [label, next] : succ) r.values[extend(path, label)] = value(next);
      if (model_.to_move(s) == r.winner) {
        for (const auto& [label, next] : succ) {
          if (value(next) == r.winner) {
            stack.emplace_back(extend(path, label), next);
            break;
          }
        }
      } else {
        for (auto it = succ.rbegin(); it != succ.rend(); ++it) stack.emplace_back(extend(path, it->first), it->second);
      }
    }
    r.explored = explored();
    return r;
  }

 private:
  const M& model_;
  std::map<State, Player> memo_;
};

template <GameModel M>
SolveResult solve(const M& model) {
  return Solver<M>(model).solve();
}

// Explicit games also report the value of every arena node.
inline SolveResult solve(const Game& game) {
  Solver<Game> solver(game);
  SolveResult r = solver.solve();
  for (FiniteTree::NodeId id = 0; id < game.tree().size(); ++id) r.values[game.tree().node(id)] = solver.value(id);
  r.explored = solver.explored();
  return r;
}

template <GameModel M>
std::optional<typename M::State> replay(const M& model, const Seq& path) {
  auto s = model.initial();
  for (Label x : path) {
    bool found = false;
    for (auto& [label, next] : model.successors(s)) {
      if (label == x) {
        s = next;
        found = true;
        break;
      }
    }
    if (!found) return std::nullopt;
  }
  return s;
}

struct Verification {
  bool certified = false;
  std::optional<Seq> counterplay;  // a decided play inside the strategy won by the opponent
  std::size_t plays_checked = 0;
};

// Walks every play consistent with `s` from `start` (default: the root) and
// checks each ends in a win for the owner. Structural defects in `s` throw
// StrategyError.
template <GameModel M>
Verification verify_winning(const M& model, const RestrictedStrategy& s, const Seq& start = {}) {
  using K = StrategyError::Kind;
  auto root = replay(model, start);
  if (!root || !s.contains(start)) throw StrategyError(K::NotInGame, start, "NotInGame(" + format_seq(start) + ")");
  Verification out;
  std::size_t visited = 0;
  std::vector<std::pair<Seq, typename M::State>> stack{{start, *root}};
  while (!stack.empty()) {
    auto [path, st] = std::move(stack.back());
    stack.pop_back();
    ++visited;
    std::optional<Player> w = model.decided(st);
    auto succ = w ? decltype(model.successors(st)){} : model.successors(st);
    if (!w && succ.empty()) w = opponent(model.to_move(st));
    if (w) {
      ++out.plays_checked;
      for (const auto& [label, next] : model.successors(st)) {
        if (s.contains(extend(path, label))) throw StrategyError(K::NotInGame, extend(path, label), "move past a decided position");
      }
      if (*w != s.owner) {
        out.counterplay = path;
        return out;
      }
      continue;
    }
    std::vector<std::pair<Seq, typename M::State>> kept;
    for (const auto& [label, next] : succ) {
      Seq child = extend(path, label);
      if (s.contains(child)) kept.emplace_back(std::move(child), next);
    }
    if (model.to_move(st) == s.owner) {
      if (kept.size() != 1) throw StrategyError(K::NotExactlyOne, path, "NotExactlyOne(" + format_seq(path) + ")");
    } else if (kept.size() != succ.size()) {
      throw StrategyError(K::MissingOpponentOption, path, "MissingOpponentOption(" + format_seq(path) + ")");
    }
    for (auto it = kept.rbegin(); it != kept.rend(); ++it) stack.push_back(std::move(*it));
  }
  if (start.empty() && visited != s.nodes.size()) {
    for (const Seq& n : s.nodes) {
      if (!replay(model, n)) throw StrategyError(K::NotInGame, n, "NotInGame(" + format_seq(n) + ")");
    }
    throw StrategyError(K::NotInGame, {}, "strategy has nodes off its own plays");
  }
  out.certified = true;
  return out;
}

inline constexpr std::uint64_t kDefaultPairCap = std::uint64_t{1} << 20;

struct OracleResult {
  Player winner = Player::I;
  std::uint64_t strategies_i = 0;
  std::uint64_t strategies_ii = 0;
};

// Winner in restricted strategies by literal enumeration: I wins iff some
// σ ∈ S_I(T) beats every τ ∈ S_II(T), II symmetrically. Independent of the
// backward-induction solver.
inline OracleResult brute_force_oracle_detailed(const Game& g, std::uint64_t pair_cap = kDefaultPairCap) {
  const FiniteTree& t = g.tree();
  const std::size_t d = g.decision_depth();
  const std::uint64_t ni = count_restricted(t, Player::I, d);
  const std::uint64_t nii = count_restricted(t, Player::II, d);
  if (detail::sat_mul(ni, nii) > pair_cap) {
    throw SolverError(SolverError::Kind::Infeasible,
                      "Infeasible: " + std::to_string(ni) + " x " + std::to_string(nii) + " strategy pairs");
  }
  auto sigmas = enumerate_restricted(t, Player::I, d);
  auto taus = enumerate_restricted(t, Player::II, d);
  std::vector<std::vector<Player>> table(sigmas.size(), std::vector<Player>(taus.size()));
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    for (std::size_t j = 0; j < taus.size(); ++j) table[i][j] = g.outcome_at(product_restricted(sigmas[i], taus[j]));
  }
  bool i_wins = false, ii_wins = false;
  for (std::size_t i = 0; i < sigmas.size() && !i_wins; ++i) {
    i_wins = std::all_of(table[i].begin(), table[i].end(), [](Player p) { return p == Player::I; });
  }
  for (std::size_t j = 0; j < taus.size() && !ii_wins; ++j) {
    bool all = true;
    for (std::size_t i = 0; i < sigmas.size() && all; ++i) all = table[i][j] == Player::II;
    ii_wins = all;
  }
  if (i_wins == ii_wins) throw SolverError(SolverError::Kind::NotDetermined, "oracle found no unique winner");
  return {i_wins ? Player::I : Player::II, ni, nii};
}

inline Player brute_force_oracle(const Game& g, std::uint64_t pair_cap = kDefaultPairCap) {
  return brute_force_oracle_detailed(g, pair_cap).winner;
}

// Winner under ψ-semantics over quotiented regular strategies.
inline Player def3_winner(const Game& g, std::uint64_t pair_cap = kDefaultPairCap) {
  const FiniteTree& t = g.tree();
  const std::size_t d = g.decision_depth();
  const std::uint64_t ni = count_quotient_regular(t, Player::I, d);
  const std::uint64_t nii = count_quotient_regular(t, Player::II, d);
  if (detail::sat_mul(ni, nii) > pair_cap) {
    throw SolverError(SolverError::Kind::Infeasible,
                      "Infeasible: " + std::to_string(ni) + " x " + std::to_string(nii) + " regular pairs");
  }
  auto sigmas = enumerate_quotient_regular(t, Player::I, d);
  auto taus = enumerate_quotient_regular(t, Player::II, d);
  std::vector<std::vector<bool>> psi_table(sigmas.size(), std::vector<bool>(taus.size()));
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    for (std::size_t j = 0; j < taus.size(); ++j) {
      // d plies suffice: either someone has left the tree or φ decides.
      Seq x = product_regular(sigmas[i], taus[j], d, &t);
      psi_table[i][j] = psi(t, g.payoff(), x);
    }
  }
  bool i_wins = false, ii_wins = false;
  for (std::size_t i = 0; i < sigmas.size() && !i_wins; ++i) {
    i_wins = std::all_of(psi_table[i].begin(), psi_table[i].end(), [](bool b) { return b; });
  }
  for (std::size_t j = 0; j < taus.size() && !ii_wins; ++j) {
    bool all = true;
    for (std::size_t i = 0; i < sigmas.size() && all; ++i) all = !psi_table[i][j];
    ii_wins = all;
  }
  if (i_wins == ii_wins) throw SolverError(SolverError::Kind::NotDetermined, "regular-strategy game has no unique winner");
  return i_wins ? Player::I : Player::II;
}

struct Def34Report {
  Player def3 = Player::I;
  Player def4 = Player::I;
  bool agree() const noexcept { return def3 == def4; }
};

inline Def34Report check_def3_def4(const Game& g, std::uint64_t pair_cap = kDefaultPairCap) {
  return {def3_winner(g, pair_cap), brute_force_oracle(g, pair_cap)};
}

}  // namespace bcg
