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
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bcg/error.hpp"
#include "bcg/game.hpp"
#include "bcg/seq.hpp"
#include "bcg/solver.hpp"
#include "bcg/strategy.hpp"
#include "bcg/tree.hpp"

// The four-phase game built over a zero-free source tree T:
//
//   phase 1  I builds t ∈ T
//   phase 2  II answers u0 with t⌢u0 ∈ T, or 0 to claim t is a leaf
//   phase 3  I builds v extending t
//   phase 4  II builds u' extending t⌢u0
//
// Each phase is played in rounds of two plies: the builder of the phase
// makes the meaningful move, the other player idles with 0. I moves at even
// plies, so a round is (builder, idle) for I and (idle, builder) for II.
// A construction step is three rounds: control (0 extend / 1 end phase),
// micro-move A (the leftmost successor of the current node), micro-move B
// (0 confirms A, or the rightmost successor when there are two). Phase 2 is
// a single A/B pair where A may also be 0, which B must then confirm.
namespace bcg {

enum class Phase : std::uint8_t { BuildT = 1, AnswerU0 = 2, BuildV = 3, BuildU = 4, Over = 5 };
enum class Step : std::uint8_t { Control, PickA, PickB };

inline std::string_view to_string(Phase p) {
  switch (p) {
    case Phase::BuildT: return "build-t";
    case Phase::AnswerU0: return "answer-u0";
    case Phase::BuildV: return "build-v";
    case Phase::BuildU: return "build-u";
    case Phase::Over: return "over";
  }
  return "?";
}

inline std::string_view to_string(Step s) {
  switch (s) {
    case Step::Control: return "control";
    case Step::PickA: return "micro-a";
    case Step::PickB: return "micro-b";
  }
  return "?";
}

struct Transcript {
  Seq t;
  Label u0 = 0;
  Seq v;
  Seq u_prime;

  Seq u() const {
    Seq out{u0};
    out.insert(out.end(), u_prime.begin(), u_prime.end());
    return out;
  }

  friend bool operator==(const Transcript&, const Transcript&) = default;
};

struct RuleVerdict {
  Player winner = Player::II;
  int rule = 0;  // 1-4 for the terminal rules, 0 when a player left the game tree
  friend bool operator==(const RuleVerdict&, const RuleVerdict&) = default;
};

struct RuleInputs {
  bool tv_in_tree = true;
  bool v_empty = true;
  bool v_starts_with_u0 = false;
  bool tu_in_tree = true;
  std::size_t v_len = 0;
  std::size_t u_len = 0;
};

// Rules in order: t⌢v ∉ T ⇒ II; v empty or v(0) = u0 ⇒ II; t⌢u ∉ T ⇒ I;
// otherwise II iff |v| <= |u|.
inline RuleVerdict apply_rules(const RuleInputs& in) {
  if (!in.tv_in_tree) return {Player::II, 1};
  if (in.v_empty || in.v_starts_with_u0) return {Player::II, 2};
  if (!in.tu_in_tree) return {Player::I, 3};
  return {in.v_len <= in.u_len ? Player::II : Player::I, 4};
}

inline RuleVerdict apply_rules(const FiniteTree& source, const Transcript& tr) {
  RuleInputs in;
  in.tv_in_tree = source.contains(concat(tr.t, tr.v));
  in.v_empty = tr.v.empty();
  in.v_starts_with_u0 = !tr.v.empty() && tr.v.front() == tr.u0;
  in.tu_in_tree = source.contains(concat(tr.t, tr.u()));
  in.v_len = tr.v.size();
  in.u_len = tr.u().size();
  return apply_rules(in);
}

struct ReductionState {
  using NodeId = FiniteTree::NodeId;

  Phase phase = Phase::BuildT;
  Step step = Step::Control;
  std::uint8_t half = 0;  // ply parity, I to move when 0
  Label staged = 0;       // I's builder move, applied after II's idle reply
  Label pending = 0;      // micro-move A awaiting B
  NodeId cur = 0;         // node being extended; npos once u has left T
  NodeId t_node = 0;
  Label u0 = 0;
  NodeId v_node = 0;

  friend auto operator<=>(const ReductionState&, const ReductionState&) = default;
};

class ReductionGame {
 public:
  using State = ReductionState;
  using NodeId = FiniteTree::NodeId;
  static constexpr NodeId npos = FiniteTree::npos;

  explicit ReductionGame(FiniteTree source) : source_(std::move(source)) {
    for (const Seq& s : source_.nodes()) {
      if (!s.empty() && s.back() == 0) {
        throw ReductionError(ReductionError::Kind::ZeroLabeledTree, 0,
                             "ZeroLabeledTree: " + format_seq(s) + " uses label 0");
      }
    }
  }

  const FiniteTree& source() const noexcept { return source_; }

  static Player builder(Phase p) {
    return p == Phase::BuildT || p == Phase::BuildV ? Player::I : Player::II;
  }

  State initial() const noexcept { return {}; }
  Player to_move(const State& s) const noexcept { return s.half == 0 ? Player::I : Player::II; }
  bool is_idle_turn(const State& s) const noexcept {
    return s.phase != Phase::Over && to_move(s) != builder(s.phase);
  }

  std::optional<Player> decided(const State& s) const {
    if (s.phase != Phase::Over) return std::nullopt;
    return verdict(s).winner;
  }

  std::vector<Label> legal_moves(const State& s) const {
    if (s.phase == Phase::Over) return {};
    if (is_idle_turn(s)) return {0};
    if (s.phase == Phase::AnswerU0) {
      if (s.step == Step::PickA) {
        std::vector<Label> out{0};
        if (auto l = source_.leftmost(s.t_node)) out.push_back(*l);
        return out;
      }
      std::vector<Label> out{0};
      if (s.pending != 0 && has_two(s.t_node)) out.push_back(*source_.rightmost(s.t_node));
      return out;
    }
    switch (s.step) {
      case Step::Control:
        if (s.cur != npos && !source_.children(s.cur).empty()) return {0, 1};
        return {1};
      case Step::PickA:
        return {*source_.leftmost(s.cur)};
      case Step::PickB: {
        std::vector<Label> out{0};
        if (has_two(s.cur)) out.push_back(*source_.rightmost(s.cur));
        return out;
      }
    }
    return {};
  }

  std::optional<State> play(const State& s, Label m) const {
    bool legal = false;
    for (Label x : legal_moves(s)) legal = legal || x == m;
    if (!legal) return std::nullopt;
    State next = s;
    if (s.half == 0) {
      if (!is_idle_turn(s)) next.staged = m;
      next.half = 1;
      return next;
    }
    next = apply(s, builder(s.phase) == Player::I ? s.staged : m);
    next.staged = 0;
    next.half = 0;
    return next;
  }

  std::vector<std::pair<Label, State>> successors(const State& s) const {
    std::vector<std::pair<Label, State>> out;
    for (Label m : legal_moves(s)) out.emplace_back(m, *play(s, m));
    return out;
  }

  // The part of (t, u0, v, u') fixed so far.
  Transcript transcript(const State& s) const {
    Transcript tr;
    const bool t_done = s.phase != Phase::BuildT;
    tr.t = source_.node(t_done ? s.t_node : s.cur);
    if (s.phase == Phase::BuildV || s.phase == Phase::BuildU || s.phase == Phase::Over) tr.u0 = s.u0;
    if (s.phase == Phase::BuildV) tr.v = suffix(source_.node(s.cur), tr.t.size());
    if (s.phase == Phase::BuildU || s.phase == Phase::Over) {
      tr.v = suffix(source_.node(s.v_node), tr.t.size());
      if (s.cur != npos) tr.u_prime = suffix(source_.node(s.cur), tr.t.size() + 1);
    }
    return tr;
  }

  // Terminal verdict computed from node ids alone.
  RuleVerdict verdict(const State& s) const {
    const std::size_t t_len = source_.node(s.t_node).size();
    const Seq& tv = source_.node(s.v_node);
    RuleInputs in;
    in.tv_in_tree = true;
    in.v_empty = s.v_node == s.t_node;
    in.v_starts_with_u0 = !in.v_empty && tv[t_len] == s.u0;
    in.tu_in_tree = s.cur != npos;
    in.v_len = tv.size() - t_len;
    in.u_len = s.cur == npos ? 1 : source_.node(s.cur).size() - t_len;
    return apply_rules(in);
  }

 private:
  static Seq suffix(const Seq& s, std::size_t from) {
    return from >= s.size() ? Seq{} : Seq(s.begin() + static_cast<std::ptrdiff_t>(from), s.end());
  }

  bool has_two(NodeId id) const { return id != npos && source_.children(id).size() == 2; }

  State apply(State s, Label a) const {
    if (s.phase == Phase::AnswerU0) {
      if (s.step == Step::PickA) {
        s.pending = a;
        s.step = Step::PickB;
      } else {
        s.u0 = a == 0 ? s.pending : a;
        s.pending = 0;
        s.phase = Phase::BuildV;
        s.step = Step::Control;
        s.cur = s.t_node;
      }
      return s;
    }
    switch (s.step) {
      case Step::Control:
        if (a == 0) {
          s.step = Step::PickA;
          break;
        }
        if (s.phase == Phase::BuildT) {
          s.t_node = s.cur;
          s.phase = Phase::AnswerU0;
          s.step = Step::PickA;
        } else if (s.phase == Phase::BuildV) {
          s.v_node = s.cur;
          s.phase = Phase::BuildU;
          s.cur = s.u0 == 0 ? npos : source_.child(s.t_node, s.u0);
        } else {
          s.phase = Phase::Over;
        }
        break;
      case Step::PickA:
        s.pending = a;
        s.step = Step::PickB;
        break;
      case Step::PickB:
        s.cur = source_.child(s.cur, a == 0 ? s.pending : a);
        s.pending = 0;
        s.step = Step::Control;
        break;
    }
    return s;
  }

  FiniteTree source_;
};

static_assert(GameModel<ReductionGame>);

struct DecodedPosition {
  Transcript so_far;
  Phase phase = Phase::BuildT;
  Step step = Step::Control;
  Player mover = Player::I;
  bool idle = false;  // the next ply is a forced 0
};

inline DecodedPosition decode(const ReductionGame& g, const Seq& position) {
  ReductionState s = g.initial();
  for (std::size_t k = 0; k < position.size(); ++k) {
    auto next = g.play(s, position[k]);
    if (!next) {
      throw ReductionError(ReductionError::Kind::IllegalPosition, k,
                           "IllegalPosition: ply " + std::to_string(k) + " plays " + std::to_string(position[k]));
    }
    s = *next;
  }
  return {g.transcript(s), s.phase, s.step, g.to_move(s), g.is_idle_turn(s)};
}

// Winner of a complete play: the first player to make an illegal move loses,
// otherwise the terminal rules decide. Moves after the decision are ignored.
inline RuleVerdict terminal_winner(const ReductionGame& g, const Seq& play) {
  ReductionState s = g.initial();
  for (std::size_t k = 0; k < play.size() && s.phase != Phase::Over; ++k) {
    auto next = g.play(s, play[k]);
    if (!next) return {opponent(mover_at(k)), 0};
    s = *next;
  }
  if (s.phase != Phase::Over) {
    throw ReductionError(ReductionError::Kind::NotTerminal, play.size(), "NotTerminal: play stops in phase " +
                                                                             std::string(to_string(s.phase)));
  }
  return apply_rules(g.source(), g.transcript(s));
}

namespace detail {

inline void push_round(Seq& out, Player builder, Label m) {
  if (builder == Player::I) {
    out.push_back(m);
    out.push_back(0);
  } else {
    out.push_back(0);
    out.push_back(m);
  }
}

// Control/A/B rounds extending `base` by `ext`, then the end signal.
inline void encode_build(const FiniteTree& source, Seq& out, Player builder, Seq base, const Seq& ext) {
  for (Label x : ext) {
    auto id = source.find(base);
    if (id == FiniteTree::npos) throw TreeError(TreeError::Kind::NodeNotInTree, base);
    auto left = source.leftmost(id);
    if (!left) throw TreeError(TreeError::Kind::NodeNotInTree, extend(base, x));
    push_round(out, builder, 0);
    push_round(out, builder, *left);
    push_round(out, builder, x == *left ? 0 : x);
    base.push_back(x);
  }
  push_round(out, builder, 1);
}

}  // namespace detail

// Moves by which I builds `t` and signals the end of phase 1.
inline Seq encode_phase1(const ReductionGame& g, const Seq& t) {
  Seq out;
  detail::encode_build(g.source(), out, Player::I, {}, t);
  return out;
}

inline Seq encode_play(const ReductionGame& g, const Transcript& tr) {
  const FiniteTree& src = g.source();
  Seq out = encode_phase1(g, tr.t);
  if (tr.u0 == 0) {
    detail::push_round(out, Player::II, 0);
    detail::push_round(out, Player::II, 0);
  } else {
    auto left = src.leftmost(src.find(tr.t));
    if (!left) throw TreeError(TreeError::Kind::NodeNotInTree, extend(tr.t, tr.u0));
    detail::push_round(out, Player::II, *left);
    detail::push_round(out, Player::II, tr.u0 == *left ? 0 : tr.u0);
  }
  detail::encode_build(src, out, Player::I, tr.t, tr.v);
  if (tr.u0 == 0) {
    detail::push_round(out, Player::II, 1);
  } else {
    detail::encode_build(src, out, Player::II, extend(tr.t, tr.u0), tr.u_prime);
  }
  return out;
}

// Every reachable state with its number of legal moves; returns the maximum.
inline std::size_t max_legal_moves(const ReductionGame& g, std::size_t* reachable_states = nullptr) {
  std::set<ReductionState> seen{g.initial()};
  std::vector<ReductionState> stack{g.initial()};
  std::size_t most = 0;
  while (!stack.empty()) {
    ReductionState s = stack.back();
    stack.pop_back();
    auto moves = g.legal_moves(s);
    most = std::max(most, moves.size());
    for (Label m : moves) {
      auto n = *g.play(s, m);
      if (seen.insert(n).second) stack.push_back(n);
    }
  }
  if (reachable_states) *reachable_states = seen.size();
  return most;
}

// Longest legal play, in plies.
inline std::size_t longest_play(const ReductionGame& g) {
  std::map<ReductionState, std::size_t> memo;
  auto go = [&](auto& self, const ReductionState& s) -> std::size_t {
    if (auto it = memo.find(s); it != memo.end()) return it->second;
    std::size_t best = 0;
    for (const auto& [m, n] : g.successors(s)) best = std::max(best, 1 + self(self, n));
    memo.emplace(s, best);
    return best;
  };
  return go(go, g.initial());
}

// The game as an explicit wellfounded binary choice tree of positions with
// exit-only semantics: a terminal won by I gets one extra move 0, leaving II
// stuck, and a terminal won by II is a leaf where I is stuck.
inline FiniteTree materialize(const ReductionGame& g) {
  std::set<Seq> nodes;
  std::vector<std::pair<Seq, ReductionState>> stack{{Seq{}, g.initial()}};
  while (!stack.empty()) {
    auto [path, s] = std::move(stack.back());
    stack.pop_back();
    if (s.phase == Phase::Over && g.verdict(s).winner == Player::I) nodes.insert(extend(path, 0));
    for (auto& [m, n] : g.successors(s)) stack.emplace_back(extend(path, m), n);
    nodes.insert(std::move(path));
  }
  return FiniteTree::from_nodes(nodes);
}

inline SolveResult solve_reduction(const FiniteTree& source) { return solve(ReductionGame(source)); }

struct BranchReport {
  Seq f;
  std::optional<std::size_t> fail_index;  // first n where θ(n) fails
  bool bound_holds = true;
};

inline bool check_cardinality_bound(const FiniteTree& source, const BranchReport& report) {
  if (!report.fail_index) return true;
  const std::size_t fail = *report.fail_index;
  auto cap = [](std::size_t j) -> std::uint64_t {
    return j + 1 >= 64 ? std::numeric_limits<std::uint64_t>::max() : (std::uint64_t{1} << (j + 1)) - 1;
  };
  if (source.size() > cap(fail)) return false;
  for (std::size_t j = 0; j <= fail; ++j) {
    Seq node = prefix(report.f, fail - j);
    if (fail - j > report.f.size() || !source.contains(node)) continue;
    if (subtree(source, node).size() > cap(j)) return false;
  }
  return true;
}

namespace detail {

inline Label strategy_reply(const ReductionGame& g, const RestrictedStrategy& tau, const Seq& position) {
  auto s = replay(g, position);
  if (!s || !tau.contains(position)) {
    throw StrategyError(StrategyError::Kind::NotInGame, position, "strategy does not reach " + format_seq(position));
  }
  std::optional<Label> reply;
  for (Label m : g.legal_moves(*s)) {
    if (tau.contains(extend(position, m))) {
      if (reply) throw StrategyError(StrategyError::Kind::NotExactlyOne, position, "NotExactlyOne(" + format_seq(position) + ")");
      reply = m;
    }
  }
  if (!reply) throw StrategyError(StrategyError::Kind::NotExactlyOne, position, "NotExactlyOne(" + format_seq(position) + ")");
  return *reply;
}

}  // namespace detail

// Position after I builds t and II answers through its two phase-2 moves.
inline Seq phase2_answer(const ReductionGame& g, const RestrictedStrategy& tau, const Seq& t, Label* u0 = nullptr) {
  Seq pos = encode_phase1(g, t);
  pos.push_back(0);
  const Label a = detail::strategy_reply(g, tau, pos);
  pos.push_back(a);
  pos.push_back(0);
  const Label b = detail::strategy_reply(g, tau, pos);
  pos.push_back(b);
  if (u0) *u0 = b == 0 ? a : b;
  return pos;
}

// Reads f(n) = u0(τ(f[n])) off II's strategy until τ claims a leaf or
// max_steps answers have been read.
inline BranchReport extract_branch(const ReductionGame& g, const RestrictedStrategy& tau, std::size_t max_steps) {
  if (tau.owner != Player::II) {
    throw StrategyError(StrategyError::Kind::NotWinning, {}, "branch extraction needs a strategy for II");
  }
  BranchReport r;
  for (std::size_t n = 0; n < max_steps; ++n) {
    Label u0 = 0;
    Seq pos = phase2_answer(g, tau, r.f, &u0);
    if (!verify_winning(g, tau, pos).certified) {
      throw StrategyError(StrategyError::Kind::NotWinning, pos,
                          "StrategyNotWinning: answer " + std::to_string(u0) + " to t=" + format_seq(r.f) + " loses");
    }
    if (u0 == 0) {
      r.fail_index = n;
      break;
    }
    r.f.push_back(u0);
  }
  r.bound_holds = check_cardinality_bound(g.source(), r);
  return r;
}

// Phase-2 answer options at t, as (A, B) move pairs.
inline std::vector<std::pair<Label, Label>> u0_options(const ReductionGame& g, const Seq& t) {
  Seq pos = encode_phase1(g, t);
  pos.push_back(0);
  auto s = *replay(g, pos);
  std::vector<std::pair<Label, Label>> out;
  for (Label a : g.legal_moves(s)) {
    auto s1 = *g.play(*g.play(s, a), 0);
    for (Label b : g.legal_moves(s1)) out.emplace_back(a, b);
  }
  return out;
}

// A strategy for II that answers each t with the given (A, B) pair and
// otherwise plays the leftmost move of best value.
inline RestrictedStrategy strategy_with_answers(const ReductionGame& g, Solver<ReductionGame>& solver,
                                                const std::map<Seq, std::pair<Label, Label>>& answers) {
  std::map<Seq, Label> forced;
  for (const auto& [t, ab] : answers) {
    Seq pos = encode_phase1(g, t);
    pos.push_back(0);
    forced[pos] = ab.first;
    pos.push_back(ab.first);
    pos.push_back(0);
    forced[pos] = ab.second;
  }
  RestrictedStrategy tau{Player::II, {}};
  std::vector<std::pair<Seq, ReductionState>> stack{{Seq{}, g.initial()}};
  while (!stack.empty()) {
    auto [path, s] = std::move(stack.back());
    stack.pop_back();
    tau.nodes.insert(path);
    auto succ = g.successors(s);
    if (succ.empty()) continue;
    if (g.to_move(s) == Player::I) {
      for (auto& [m, n] : succ) stack.emplace_back(extend(path, m), n);
      continue;
    }
    auto pick = succ.front();
    if (auto it = forced.find(path); it != forced.end()) {
      for (auto& c : succ) {
        if (c.first == it->second) pick = c;
      }
    } else {
      for (auto& c : succ) {
        if (solver.value(c.second) == Player::II) {
          pick = c;
          break;
        }
      }
    }
    stack.emplace_back(extend(path, pick.first), pick.second);
  }
  return tau;
}

}  // namespace bcg
