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
#include <span>
#include <utility>
#include <vector>

#include "bcg/error.hpp"
#include "bcg/seq.hpp"

namespace bcg {

struct TreeViolation {
  TreeError::Kind kind;
  Seq node;
};

// A finite binary choice tree: a prefix-closed set of sequences in which
// every node has at most two immediate successors. Immutable once built.
//
// Nodes are stored sorted (proper prefixes first), so the root is always
// id 0 and the children of a node are listed by increasing label: the
// first child is the leftmost successor, the last is the rightmost.
class FiniteTree {
 public:
  using NodeId = std::size_t;
  static constexpr NodeId npos = static_cast<NodeId>(-1);

  // The root-only tree {<>}.
  FiniteTree() : FiniteTree(Unchecked{}, std::vector<Seq>{Seq{}}) {}

  // Throws TreeError naming the first offending node in sorted order.
  static FiniteTree from_nodes(const std::set<Seq>& candidate);

  // Returns the first violation, if any, without building a tree.
  static std::optional<TreeViolation> check(const std::set<Seq>& candidate);

  std::size_t size() const noexcept { return nodes_.size(); }
  std::size_t height() const noexcept { return height_; }

  const std::vector<Seq>& nodes() const noexcept { return nodes_; }
  const Seq& node(NodeId id) const { return nodes_.at(id); }

  NodeId find(const Seq& s) const {
    auto it = index_.find(s);
    return it == index_.end() ? npos : it->second;
  }
  bool contains(const Seq& s) const { return index_.count(s) != 0; }

  std::span<const NodeId> children(NodeId id) const { return children_.at(id); }
  NodeId parent(NodeId id) const { return parent_.at(id); }

  // Child of `id` whose last entry is `label`, or npos.
  NodeId child(NodeId id, Label label) const {
    for (NodeId c : children_.at(id)) {
      if (nodes_[c].back() == label) return c;
    }
    return npos;
  }

  std::optional<Label> leftmost(NodeId id) const {
    const auto& cs = children_.at(id);
    if (cs.empty()) return std::nullopt;
    return nodes_[cs.front()].back();
  }
  std::optional<Label> rightmost(NodeId id) const {
    const auto& cs = children_.at(id);
    if (cs.empty()) return std::nullopt;
    return nodes_[cs.back()].back();
  }

  // One-step extensions of t in ascending label order.
  std::vector<Seq> successors(const Seq& t) const {
    NodeId id = find(t);
    if (id == npos) throw TreeError(TreeError::Kind::NodeNotInTree, t);
    std::vector<Seq> out;
    for (NodeId c : children_[id]) out.push_back(nodes_[c]);
    return out;
  }

  std::set<Seq> node_set() const { return {nodes_.begin(), nodes_.end()}; }

  friend bool operator==(const FiniteTree& a, const FiniteTree& b) {
    return a.nodes_ == b.nodes_;
  }

 private:
  struct Unchecked {};

  FiniteTree(Unchecked, std::vector<Seq> sorted_nodes);

  std::vector<Seq> nodes_;
  std::map<Seq, NodeId> index_;
  std::vector<std::vector<NodeId>> children_;
  std::vector<NodeId> parent_;
  std::size_t height_ = 0;
};

inline std::optional<TreeViolation> FiniteTree::check(const std::set<Seq>& candidate) {
  if (!candidate.count(Seq{})) {
    Seq first = candidate.empty() ? Seq{} : *candidate.begin();
    return TreeViolation{TreeError::Kind::MissingPrefix, first};
  }
  std::map<Seq, std::size_t> successor_count;
  for (const Seq& s : candidate) {
    if (!s.empty()) ++successor_count[prefix(s, s.size() - 1)];
  }
  // std::set iterates in the canonical order, so the first report is the
  // least offending node.
  for (const Seq& s : candidate) {
    if (!s.empty() && !candidate.count(prefix(s, s.size() - 1))) {
      return TreeViolation{TreeError::Kind::MissingPrefix, s};
    }
    auto it = successor_count.find(s);
    if (it != successor_count.end() && it->second > 2) {
      return TreeViolation{TreeError::Kind::TooManySuccessors, s};
    }
  }
  return std::nullopt;
}

inline FiniteTree FiniteTree::from_nodes(const std::set<Seq>& candidate) {
  if (auto v = check(candidate)) throw TreeError(v->kind, v->node);
  return FiniteTree(Unchecked{}, std::vector<Seq>(candidate.begin(), candidate.end()));
}

inline FiniteTree::FiniteTree(Unchecked, std::vector<Seq> sorted_nodes)
    : nodes_(std::move(sorted_nodes)) {
  children_.resize(nodes_.size());
  parent_.assign(nodes_.size(), npos);
  for (NodeId id = 0; id < nodes_.size(); ++id) {
    index_.emplace(nodes_[id], id);
    height_ = std::max(height_, nodes_[id].size());
  }
  for (NodeId id = 1; id < nodes_.size(); ++id) {
    NodeId p = index_.at(prefix(nodes_[id], nodes_[id].size() - 1));
    parent_[id] = p;
    children_[p].push_back(id);
  }
}

struct TreeMetrics {
  std::size_t size = 0;
  std::size_t height = 0;
  friend bool operator==(const TreeMetrics&, const TreeMetrics&) = default;
};

inline TreeMetrics metrics(const FiniteTree& t) { return {t.size(), t.height()}; }

// The tree of suffixes below t: {s : t⌢s ∈ T}.
inline FiniteTree subtree(const FiniteTree& tree, const Seq& t) {
  if (!tree.contains(t)) throw TreeError(TreeError::Kind::NodeNotInTree, t);
  std::set<Seq> out;
  for (const Seq& s : tree.nodes()) {
    if (is_prefix(t, s)) out.insert(Seq(s.begin() + static_cast<std::ptrdiff_t>(t.size()), s.end()));
  }
  return FiniteTree::from_nodes(out);
}

// Shifts every label up by one, freeing 0 for use as a control symbol.
inline FiniteTree zero_free_transform(const FiniteTree& tree) {
  std::set<Seq> out;
  for (Seq s : tree.nodes()) {
    for (Label& x : s) ++x;
    out.insert(std::move(s));
  }
  return FiniteTree::from_nodes(out);
}

inline bool is_zero_free(const FiniteTree& tree) {
  for (const Seq& s : tree.nodes()) {
    if (!s.empty() && s.back() == 0) return false;
  }
  return true;
}

// Keeps the nodes of length <= depth.
inline FiniteTree truncate(const FiniteTree& tree, std::size_t depth) {
  if (tree.height() <= depth) return tree;
  std::set<Seq> out;
  for (const Seq& s : tree.nodes()) {
    if (s.size() <= depth) out.insert(s);
  }
  return FiniteTree::from_nodes(out);
}

// Adds one forced ply in front of the tree: {<>} ∪ {<label>⌢s : s ∈ T}.
inline FiniteTree prepend_ply(const FiniteTree& tree, Label label = 1) {
  std::set<Seq> out{Seq{}};
  for (const Seq& s : tree.nodes()) {
    Seq n{label};
    n.insert(n.end(), s.begin(), s.end());
    out.insert(std::move(n));
  }
  return FiniteTree::from_nodes(out);
}

namespace detail {

// Shapes of ordered unary/binary trees, as sets of relative paths built
// over canonical labels {lo, lo + 1}; a lone child always gets lo.
inline const std::vector<std::vector<std::set<Seq>>>& shapes_by_size(std::size_t max_size, Label lo) {
  thread_local std::map<std::pair<std::size_t, Label>, std::vector<std::vector<std::set<Seq>>>> cache;
  auto key = std::make_pair(max_size, lo);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  std::vector<std::vector<std::set<Seq>>> by_size(max_size + 1);
  if (max_size >= 1) by_size[1].push_back({Seq{}});
  auto graft = [](std::set<Seq>& into, const std::set<Seq>& sub, Label label) {
    for (const Seq& s : sub) {
      Seq n{label};
      n.insert(n.end(), s.begin(), s.end());
      into.insert(std::move(n));
    }
  };
  for (std::size_t n = 2; n <= max_size; ++n) {
    for (const auto& only : by_size[n - 1]) {
      std::set<Seq> t{Seq{}};
      graft(t, only, lo);
      by_size[n].push_back(std::move(t));
    }
    for (std::size_t a = 1; a + 1 < n; ++a) {
      std::size_t b = n - 1 - a;
      for (const auto& left : by_size[a]) {
        for (const auto& right : by_size[b]) {
          std::set<Seq> t{Seq{}};
          graft(t, left, lo);
          graft(t, right, lo + 1);
          by_size[n].push_back(std::move(t));
        }
      }
    }
  }
  return cache.emplace(key, std::move(by_size)).first->second;
}

}  // namespace detail

// Every binary choice tree with at most max_size nodes under canonical
// labels ({1,2} when zero_free, else {0,1}), smallest trees first.
inline std::vector<FiniteTree> enumerate_trees(std::size_t max_size, bool zero_free) {
  std::vector<FiniteTree> out;
  const auto& by_size = detail::shapes_by_size(max_size, zero_free ? 1 : 0);
  for (std::size_t n = 1; n <= max_size; ++n) {
    for (const auto& nodes : by_size[n]) out.push_back(FiniteTree::from_nodes(nodes));
  }
  return out;
}

}  // namespace bcg
