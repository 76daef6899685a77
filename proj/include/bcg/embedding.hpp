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

#include <map>
#include <set>
#include <utility>

#include "bcg/error.hpp"
#include "bcg/payoff.hpp"
#include "bcg/seq.hpp"
#include "bcg/strategy.hpp"
#include "bcg/tree.hpp"

namespace bcg {

// Order-preserving relabelling of a binary choice tree into {0,1}-sequences:
// the leftmost successor (including a lone one) maps to 0, the other to 1.
struct RhoMap {
  FiniteTree source;
  std::map<Seq, Seq> forward;
  std::map<Seq, Seq> backward;
  FiniteTree range_tree;

  const Seq& image(const Seq& s) const {
    auto it = forward.find(s);
    if (it == forward.end()) throw TreeError(TreeError::Kind::NodeNotInTree, s);
    return it->second;
  }
  const Seq& preimage(const Seq& b) const {
    auto it = backward.find(b);
    if (it == backward.end()) throw TreeError(TreeError::Kind::NodeNotInTree, b);
    return it->second;
  }
};

inline RhoMap build_rho(const FiniteTree& source) {
  RhoMap rho{source, {}, {}, FiniteTree{}};
  std::vector<Seq> image(source.size());
  for (FiniteTree::NodeId id = 1; id < source.size(); ++id) {
    FiniteTree::NodeId p = source.parent(id);
    auto kids = source.children(p);
    image[id] = extend(image[p], kids.front() == id ? 0 : 1);
  }
  std::set<Seq> range;
  for (FiniteTree::NodeId id = 0; id < source.size(); ++id) {
    rho.forward.emplace(source.node(id), image[id]);
    rho.backward.emplace(image[id], source.node(id));
    range.insert(image[id]);
  }
  rho.range_tree = FiniteTree::from_nodes(range);
  return rho;
}

inline ClopenAntichain push_payoff(const RhoMap& rho, const ClopenAntichain& phi) {
  std::map<Seq, Player> entries;
  for (const auto& [p, w] : phi.entries()) {
    auto it = rho.forward.find(p);
    if (it == rho.forward.end()) {
      throw PayoffError(PayoffError::Kind::PrefixNotInSource, "PrefixNotInSource(" + format_seq(p) + ")");
    }
    entries.emplace(it->second, w);
  }
  return ClopenAntichain(std::move(entries), phi.default_winner());
}

inline RestrictedStrategy pull_back_strategy(const RhoMap& rho, const RestrictedStrategy& s) {
  RestrictedStrategy out{s.owner, {}};
  for (const Seq& n : s.nodes) out.nodes.insert(rho.preimage(n));
  return out;
}

inline RestrictedStrategy push_strategy(const RhoMap& rho, const RestrictedStrategy& s) {
  RestrictedStrategy out{s.owner, {}};
  for (const Seq& n : s.nodes) out.nodes.insert(rho.image(n));
  return out;
}

}  // namespace bcg
