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
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "bcg/error.hpp"
#include "bcg/seq.hpp"
#include "bcg/tree.hpp"

namespace bcg {

// Clopen winning condition: a prefix antichain labelled with winners plus an
// optional default for plays extending no entry.
class ClopenAntichain {
 public:
  ClopenAntichain() = default;

  ClopenAntichain(std::map<Seq, Player> entries, std::optional<Player> fallback)
      : entries_(std::move(entries)), default_(fallback) {
    const Seq* prev = nullptr;
    // In sorted order a prefix is always followed by one of its extensions,
    // so checking neighbours covers every pair.
    for (const auto& [p, w] : entries_) {
      if (prev && is_prefix(*prev, p)) {
        throw PayoffError(PayoffError::Kind::NotAntichain,
                          "NotAntichain: " + format_seq(*prev) + " is a prefix of " + format_seq(p));
      }
      prev = &p;
      depth_ = std::max(depth_, p.size());
    }
  }

  static ClopenAntichain constant(Player w) { return ClopenAntichain({}, w); }

  const std::map<Seq, Player>& entries() const noexcept { return entries_; }
  std::optional<Player> default_winner() const noexcept { return default_; }

  // Longest entry; every play prefix at least this long is decided when a
  // default exists.
  std::size_t decision_depth() const noexcept { return depth_; }

  // Winner of every play through `p`, or nullopt when extensions of `p`
  // may still disagree (or no default covers it).
  std::optional<Player> winner_at(const Seq& p) const {
    for (std::size_t k = 0; k <= p.size(); ++k) {
      auto it = entries_.find(prefix(p, k));
      if (it != entries_.end()) return it->second;
    }
    auto next = entries_.lower_bound(p);
    if (next != entries_.end() && is_prefix(p, next->first)) return std::nullopt;
    return default_;
  }

  // Every node of `tree` at length `depth` must be decided.
  std::optional<Seq> first_undecided(const FiniteTree& tree, std::size_t depth) const {
    for (const Seq& s : tree.nodes()) {
      if (s.size() == depth && !winner_at(s)) return s;
    }
    return std::nullopt;
  }

  friend bool operator==(const ClopenAntichain&, const ClopenAntichain&) = default;

 private:
  std::map<Seq, Player> entries_;
  std::optional<Player> default_;
  std::size_t depth_ = 0;
};

// Finitely generated open set: plays extending some generator.
struct OpenSet {
  std::set<Seq> generators;

  std::size_t max_len() const noexcept {
    std::size_t m = 0;
    for (const Seq& g : generators) m = std::max(m, g.size());
    return m;
  }

  bool contains(const Seq& play) const {
    for (std::size_t k = 0; k <= play.size(); ++k) {
      if (generators.count(prefix(play, k))) return true;
    }
    return false;
  }

  friend bool operator==(const OpenSet&, const OpenSet&) = default;
};

// k nested differences of open sets: D_k = U_k, D_i = U_i \ D_{i+1}; the
// payoff is D_1 (or its complement when `complemented`).
struct DiffPayoff {
  std::vector<OpenSet> levels;
  bool complemented = false;

  std::size_t k() const noexcept { return levels.size(); }

  std::size_t decision_depth() const noexcept {
    std::size_t m = 0;
    for (const auto& u : levels) m = std::max(m, u.max_len());
    return m;
  }

  bool eval(const Seq& p) const {
    if (levels.empty()) throw PayoffError(PayoffError::Kind::BadLevels, "difference payoff needs k >= 1");
    if (p.size() < decision_depth()) {
      throw PayoffError(PayoffError::Kind::PrefixTooShort,
                        "PrefixTooShort: " + format_seq(p) + " shorter than decision depth " +
                            std::to_string(decision_depth()));
    }
    bool inner = false;
    for (std::size_t i = levels.size(); i-- > 0;) inner = levels[i].contains(p) && !inner;
    return inner != complemented;
  }

  friend bool operator==(const DiffPayoff&, const DiffPayoff&) = default;
};

inline bool eval_diff(const DiffPayoff& d, const Seq& p) { return d.eval(p); }

// Clopen form of `d` over the nodes of `tree`: each node at the decision
// depth that lies in the payoff becomes an entry for I, the rest default to II.
inline ClopenAntichain compile(const DiffPayoff& d, const FiniteTree& tree) {
  const std::size_t depth = d.decision_depth();
  std::map<Seq, Player> entries;
  for (const Seq& s : tree.nodes()) {
    if (s.size() == depth && d.eval(s)) entries.emplace(s, Player::I);
  }
  return ClopenAntichain(std::move(entries), Player::II);
}

struct ExitEvent {
  std::size_t exit_length;  // least n with x|n outside the tree
  Player offender;          // mover of ply exit_length - 1

  friend bool operator==(const ExitEvent&, const ExitEvent&) = default;
};

inline std::optional<ExitEvent> first_exit(const FiniteTree& tree, const Seq& x) {
  FiniteTree::NodeId cur = 0;
  for (std::size_t n = 0; n < x.size(); ++n) {
    cur = tree.child(cur, x[n]);
    if (cur == FiniteTree::npos) return ExitEvent{n + 1, mover_at(n)};
  }
  return std::nullopt;
}

// μ_I / μ_II: the least exit was made by I / by II.
inline bool mu(const FiniteTree& tree, const Seq& x, Player offender) {
  auto e = first_exit(tree, x);
  return e && e->offender == offender;
}

// Winner under the wrapped condition ψ = ¬μ_I ∧ (φ ∨ μ_II): the first
// player to leave the tree loses, otherwise φ decides.
inline Player outcome_psi(const FiniteTree& tree, const ClopenAntichain& phi, const Seq& x) {
  if (auto e = first_exit(tree, x)) return opponent(e->offender);
  if (auto w = phi.winner_at(x)) return *w;
  throw PayoffError(PayoffError::Kind::Undecided,
                    "Undecided: " + format_seq(x) + " neither exits nor is decided by the payoff");
}

inline bool psi(const FiniteTree& tree, const ClopenAntichain& phi, const Seq& x) {
  return outcome_psi(tree, phi, x) == Player::I;
}

// Exit-only win for `winner` on a finite play prefix u: the first
// out-of-tree prefix of u was produced by the opponent.
inline bool exit_win(const FiniteTree& tree, const Seq& u, Player winner) {
  return mu(tree, u, opponent(winner));
}

// ∃n W(x|n).
inline bool exit_win_exists(const FiniteTree& tree, const Seq& x, Player winner) {
  for (std::size_t n = 0; n <= x.size(); ++n) {
    if (exit_win(tree, prefix(x, n), winner)) return true;
  }
  return false;
}

// ∀n (x|n ∉ T → W(x|n)).
inline bool exit_win_forall(const FiniteTree& tree, const Seq& x, Player winner) {
  for (std::size_t n = 0; n <= x.size(); ++n) {
    Seq p = prefix(x, n);
    if (!tree.contains(p) && !exit_win(tree, p, winner)) return false;
  }
  return true;
}

}  // namespace bcg
