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
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bcg/error.hpp"
#include "bcg/seq.hpp"
#include "bcg/tree.hpp"

namespace bcg {

inline constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

// A strategy in subtree form: at the owner's nodes exactly one successor is
// kept, at the opponent's nodes every successor is kept.
struct RestrictedStrategy {
  Player owner = Player::I;
  std::set<Seq> nodes{Seq{}};

  bool contains(const Seq& s) const { return nodes.count(s) != 0; }

  friend bool operator==(const RestrictedStrategy&, const RestrictedStrategy&) = default;
};

struct StrategyViolation {
  StrategyError::Kind kind;
  Seq node;
};

inline std::string describe(const StrategyViolation& v) {
  switch (v.kind) {
    case StrategyError::Kind::NotExactlyOne: return "NotExactlyOne(" + format_seq(v.node) + ")";
    case StrategyError::Kind::MissingOpponentOption: return "MissingOpponentOption(" + format_seq(v.node) + ")";
    case StrategyError::Kind::NotInGame: return "NotInGame(" + format_seq(v.node) + ")";
    case StrategyError::Kind::MissingPrefix: return "MissingPrefix(" + format_seq(v.node) + ")";
    case StrategyError::Kind::MissingRoot: return "MissingRoot";
    default: return "StrategyViolation(" + format_seq(v.node) + ")";
  }
}

// Checks `s` against the game tree. Nodes at length >= depth are terminal
// and must have no children in `s`. An owner node without successors in the
// tree keeps none (the owner is forced out of the tree there).
inline std::optional<StrategyViolation> check_restricted(const FiniteTree& tree, const RestrictedStrategy& s,
                                                         std::size_t depth = kUnbounded) {
  using K = StrategyError::Kind;
  if (!s.contains(Seq{})) return StrategyViolation{K::MissingRoot, {}};
  for (const Seq& n : s.nodes) {
    if (!tree.contains(n) || n.size() > depth) return StrategyViolation{K::NotInGame, n};
    if (!n.empty() && !s.contains(prefix(n, n.size() - 1))) return StrategyViolation{K::MissingPrefix, n};
    if (n.size() == depth) continue;
    auto kids = tree.children(tree.find(n));
    std::size_t kept = 0;
    for (auto c : kids) kept += s.contains(tree.node(c));
    if (mover_at(n.size()) == s.owner) {
      if (!kids.empty() && kept != 1) return StrategyViolation{K::NotExactlyOne, n};
    } else if (kept != kids.size()) {
      return StrategyViolation{K::MissingOpponentOption, n};
    }
  }
  return std::nullopt;
}

inline void validate_restricted(const FiniteTree& tree, const RestrictedStrategy& s,
                                std::size_t depth = kUnbounded) {
  if (auto v = check_restricted(tree, s, depth)) throw StrategyError(v->kind, v->node, describe(*v));
}

namespace detail {

inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}
inline std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return b > std::numeric_limits<std::uint64_t>::max() - a ? std::numeric_limits<std::uint64_t>::max() : a + b;
}

// with_exit adds the quotiented off-tree move at every owner node.
inline std::uint64_t count_below(const FiniteTree& tree, FiniteTree::NodeId id, Player owner, std::size_t depth,
                                 bool with_exit) {
  const Seq& n = tree.node(id);
  if (n.size() >= depth) return 1;
  auto kids = tree.children(id);
  if (mover_at(n.size()) == owner) {
    std::uint64_t total = with_exit ? 1 : 0;
    for (auto c : kids) total = sat_add(total, count_below(tree, c, owner, depth, with_exit));
    return kids.empty() ? 1 : total;
  }
  std::uint64_t total = 1;
  for (auto c : kids) total = sat_mul(total, count_below(tree, c, owner, depth, with_exit));
  return total;
}

inline void expand_restricted(const FiniteTree& tree, FiniteTree::NodeId id, Player owner, std::size_t depth,
                              std::vector<std::vector<FiniteTree::NodeId>>& out) {
  const Seq& n = tree.node(id);
  auto kids = tree.children(id);
  if (n.size() >= depth || kids.empty()) {
    out.push_back({id});
    return;
  }
  if (mover_at(n.size()) == owner) {
    for (auto c : kids) {
      std::vector<std::vector<FiniteTree::NodeId>> sub;
      expand_restricted(tree, c, owner, depth, sub);
      for (auto& v : sub) {
        v.push_back(id);
        out.push_back(std::move(v));
      }
    }
    return;
  }
  std::vector<std::vector<FiniteTree::NodeId>> acc{{id}};
  for (auto c : kids) {
    std::vector<std::vector<FiniteTree::NodeId>> sub;
    expand_restricted(tree, c, owner, depth, sub);
    std::vector<std::vector<FiniteTree::NodeId>> next;
    for (const auto& a : acc) {
      for (const auto& b : sub) {
        auto merged = a;
        merged.insert(merged.end(), b.begin(), b.end());
        next.push_back(std::move(merged));
      }
    }
    acc = std::move(next);
  }
  for (auto& v : acc) out.push_back(std::move(v));
}

}  // namespace detail

inline std::uint64_t count_restricted(const FiniteTree& tree, Player owner, std::size_t depth = kUnbounded) {
  return detail::count_below(tree, 0, owner, depth, false);
}

// Every restricted strategy for `owner`, in a deterministic order (choices
// at shallower owner nodes vary slowest, leftmost first).
inline std::vector<RestrictedStrategy> enumerate_restricted(const FiniteTree& tree, Player owner,
                                                            std::size_t depth = kUnbounded) {
  std::vector<std::vector<FiniteTree::NodeId>> raw;
  detail::expand_restricted(tree, 0, owner, depth, raw);
  std::vector<RestrictedStrategy> out;
  out.reserve(raw.size());
  for (const auto& ids : raw) {
    RestrictedStrategy s{owner, {}};
    for (auto id : ids) s.nodes.insert(tree.node(id));
    out.push_back(std::move(s));
  }
  return out;
}

// Maximal node of σ ∩ τ, which must be a single path from the root.
inline Seq product_restricted(const RestrictedStrategy& a, const RestrictedStrategy& b) {
  Seq last;
  std::size_t len = 0;
  for (const Seq& n : a.nodes) {
    if (!b.contains(n)) continue;
    if (n.size() != len || !is_prefix(last, n)) {
      throw StrategyError(StrategyError::Kind::NotAPath, n, "NotAPath at " + format_seq(n));
    }
    last = n;
    ++len;
  }
  if (len == 0) throw StrategyError(StrategyError::Kind::NotAPath, {}, "NotAPath: empty intersection");
  return last;
}

// Distinguished off-tree move of a quotiented regular strategy.
inline constexpr Label kExit = std::numeric_limits<Label>::max();

// A strategy as a function from positions to moves. Positions missing from
// `moves` use `fallback` when set.
struct RegularStrategy {
  Player owner = Player::I;
  std::map<Seq, Label> moves;
  std::optional<Label> fallback;

  std::size_t horizon() const {
    std::size_t h = 0;
    for (const auto& [p, m] : moves) h = std::max(h, p.size() + 1);
    return h;
  }

  Label at(const Seq& position) const {
    auto it = moves.find(position);
    if (it != moves.end()) return it->second;
    if (fallback) return *fallback;
    throw StrategyError(StrategyError::Kind::UndefinedAt, position, "UndefinedAt(" + format_seq(position) + ")");
  }

  friend bool operator==(const RegularStrategy&, const RegularStrategy&) = default;
};

// Concrete number played for `move` at `position`: kExit becomes one more
// than the rightmost in-tree successor label (0 at a leaf or off the tree).
inline Label realize_move(const FiniteTree* tree, const Seq& position, Label move) {
  if (move != kExit) return move;
  if (!tree) throw StrategyError(StrategyError::Kind::UndefinedAt, position, "EXIT needs a game tree to realize");
  auto id = tree->find(position);
  if (id == FiniteTree::npos) return 0;
  auto r = tree->rightmost(id);
  return r ? *r + 1 : 0;
}

// σ⊗τ truncated to `horizon` plies: σ plays the even plies, τ the odd ones.
inline Seq product_regular(const RegularStrategy& sigma, const RegularStrategy& tau, std::size_t horizon,
                           const FiniteTree* tree = nullptr) {
  Seq play;
  play.reserve(horizon);
  while (play.size() < horizon) {
    const RegularStrategy& s = mover_at(play.size()) == Player::I ? sigma : tau;
    play.push_back(realize_move(tree, play, s.at(play)));
  }
  return play;
}

// Plays the restricted choice inside `s` and 0 everywhere else.
inline RegularStrategy restricted_to_regular(const FiniteTree& tree, const RestrictedStrategy& s) {
  RegularStrategy r{s.owner, {}, Label{0}};
  for (const Seq& n : s.nodes) {
    if (mover_at(n.size()) != s.owner) continue;
    auto id = tree.find(n);
    if (id == FiniteTree::npos) continue;
    for (auto c : tree.children(id)) {
      if (s.contains(tree.node(c))) {
        r.moves.emplace(n, tree.node(c).back());
        break;
      }
    }
  }
  return r;
}

inline std::uint64_t count_quotient_regular(const FiniteTree& tree, Player owner, std::size_t depth) {
  return detail::count_below(tree, 0, owner, depth, true);
}

namespace detail {

inline void expand_regular(const FiniteTree& tree, FiniteTree::NodeId id, Player owner, std::size_t depth,
                           std::vector<std::map<Seq, Label>>& out) {
  const Seq& n = tree.node(id);
  if (n.size() >= depth) {
    out.push_back({});
    return;
  }
  auto kids = tree.children(id);
  if (mover_at(n.size()) == owner) {
    for (auto c : kids) {
      std::vector<std::map<Seq, Label>> sub;
      expand_regular(tree, c, owner, depth, sub);
      for (auto& m : sub) {
        m.emplace(n, tree.node(c).back());
        out.push_back(std::move(m));
      }
    }
    out.push_back({{n, kExit}});
    return;
  }
  std::vector<std::map<Seq, Label>> acc{{}};
  for (auto c : kids) {
    std::vector<std::map<Seq, Label>> sub;
    expand_regular(tree, c, owner, depth, sub);
    std::vector<std::map<Seq, Label>> next;
    for (const auto& a : acc) {
      for (const auto& b : sub) {
        auto merged = a;
        merged.insert(b.begin(), b.end());
        next.push_back(std::move(merged));
      }
    }
    acc = std::move(next);
  }
  for (auto& m : acc) out.push_back(std::move(m));
}

}  // namespace detail

// Regular strategies modulo outcome equivalence: defined on the owner's
// in-tree positions consistent with the strategy itself, choosing an in-tree
// successor or kExit; 0 elsewhere.
inline std::vector<RegularStrategy> enumerate_quotient_regular(const FiniteTree& tree, Player owner,
                                                               std::size_t depth) {
  std::vector<std::map<Seq, Label>> raw;
  detail::expand_regular(tree, 0, owner, depth, raw);
  std::vector<RegularStrategy> out;
  out.reserve(raw.size());
  for (auto& m : raw) out.push_back(RegularStrategy{owner, std::move(m), Label{0}});
  return out;
}

}  // namespace bcg
