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

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bcg/error.hpp"
#include "bcg/payoff.hpp"
#include "bcg/seq.hpp"
#include "bcg/strategy.hpp"
#include "bcg/tree.hpp"

// Text formats. All are UTF-8, one record per line; blank lines are ignored.
//
//   tree v1                   payoff clopen v1        payoff diff v1 k=2
//   1                         I: 1 3                  level 1:
//   2                         II: 2                   1
//   1 3                       default: II             level 2:
//                                                     1 2
//   strategy v1 owner=II
//   1
//
// The root is implicit in tree and strategy files. In difference payoffs the
// empty generator is written ".", and a trailing " complement" on the header
// negates the payoff.
namespace bcg {

namespace io_detail {

struct Line {
  std::size_t number;
  std::string_view text;
};

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// Non-blank lines after the header; the header itself is returned separately.
inline std::vector<Line> split(std::string_view text, std::string_view* header) {
  std::vector<Line> out;
  std::size_t number = 0;
  bool first = true;
  while (!text.empty() || first) {
    auto nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++number;
    auto t = trim(raw);
    if (first) {
      *header = t;
      first = false;
      continue;
    }
    if (!t.empty()) out.push_back({number, t});
  }
  return out;
}

inline Seq parse_seq(std::string_view s, std::size_t line) {
  Seq out;
  s = trim(s);
  while (!s.empty()) {
    auto sp = s.find_first_of(" \t");
    std::string_view tok = s.substr(0, sp);
    Label v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size() || tok.empty()) {
      throw SyntaxError(line, "not a natural number: '" + std::string(tok) + "'");
    }
    out.push_back(v);
    s = sp == std::string_view::npos ? std::string_view{} : trim(s.substr(sp));
  }
  return out;
}

inline std::set<Seq> parse_node_lines(const std::vector<Line>& lines) {
  std::set<Seq> nodes{Seq{}};
  for (const auto& l : lines) {
    Seq s = parse_seq(l.text, l.number);
    if (!nodes.insert(s).second) throw SyntaxError(l.number, "duplicate node " + format_seq(s));
  }
  return nodes;
}

}  // namespace io_detail

inline FiniteTree parse_tree(std::string_view text) {
  std::string_view header;
  auto lines = io_detail::split(text, &header);
  if (header != "tree v1") throw SyntaxError(1, "expected 'tree v1'");
  return FiniteTree::from_nodes(io_detail::parse_node_lines(lines));
}

inline std::string serialize_tree(const FiniteTree& tree) {
  std::string out = "tree v1\n";
  for (std::size_t i = 1; i < tree.size(); ++i) out += join_seq(tree.node(i)) + "\n";
  return out;
}

using AnyPayoff = std::variant<ClopenAntichain, DiffPayoff>;

inline ClopenAntichain parse_clopen_body(const std::vector<io_detail::Line>& lines) {
  std::map<Seq, Player> entries;
  std::optional<Player> fallback;
  bool seen_default = false;
  for (const auto& l : lines) {
    auto colon = l.text.find(':');
    if (colon == std::string_view::npos) throw SyntaxError(l.number, "expected 'I:', 'II:' or 'default:'");
    auto key = io_detail::trim(l.text.substr(0, colon));
    auto rest = l.text.substr(colon + 1);
    if (key == "default") {
      auto p = parse_player(io_detail::trim(rest));
      if (!p || seen_default) throw SyntaxError(l.number, "bad or repeated default");
      fallback = p;
      seen_default = true;
      continue;
    }
    auto p = parse_player(key);
    if (!p) throw SyntaxError(l.number, "unknown winner '" + std::string(key) + "'");
    Seq s = io_detail::parse_seq(rest, l.number);
    if (!entries.emplace(s, *p).second) throw SyntaxError(l.number, "duplicate entry " + format_seq(s));
  }
  return ClopenAntichain(std::move(entries), fallback);
}

inline DiffPayoff parse_diff_body(std::string_view header, const std::vector<io_detail::Line>& lines) {
  // header: "payoff diff v1 k=<k>" [" complement"]
  std::istringstream hs{std::string(header)};
  std::string w1, w2, w3, kfield, extra, more;
  hs >> w1 >> w2 >> w3 >> kfield >> extra >> more;
  if (kfield.rfind("k=", 0) != 0 || !more.empty() || (!extra.empty() && extra != "complement")) {
    throw SyntaxError(1, "expected 'payoff diff v1 k=<k>'");
  }
  std::size_t k = 0;
  auto kv = std::string_view(kfield).substr(2);
  auto [ptr, ec] = std::from_chars(kv.data(), kv.data() + kv.size(), k);
  if (ec != std::errc{} || ptr != kv.data() + kv.size() || k == 0) throw SyntaxError(1, "k must be a positive integer");
  DiffPayoff d;
  d.complemented = extra == "complement";
  for (const auto& l : lines) {
    if (l.text.rfind("level", 0) == 0) {
      std::string expect = "level " + std::to_string(d.levels.size() + 1) + ":";
      if (l.text != expect) throw SyntaxError(l.number, "expected '" + expect + "'");
      d.levels.emplace_back();
      continue;
    }
    if (d.levels.empty()) throw SyntaxError(l.number, "generator before 'level 1:'");
    Seq g = l.text == "." ? Seq{} : io_detail::parse_seq(l.text, l.number);
    if (!d.levels.back().generators.insert(g).second) throw SyntaxError(l.number, "duplicate generator");
  }
  if (d.levels.size() != k) {
    throw SyntaxError(lines.empty() ? 1 : lines.back().number, "expected " + std::to_string(k) + " levels");
  }
  return d;
}

inline AnyPayoff parse_payoff(std::string_view text) {
  std::string_view header;
  auto lines = io_detail::split(text, &header);
  if (header == "payoff clopen v1") return parse_clopen_body(lines);
  if (header.rfind("payoff diff v1 ", 0) == 0) return parse_diff_body(header, lines);
  throw SyntaxError(1, "expected 'payoff clopen v1' or 'payoff diff v1 k=<k>'");
}

inline std::string serialize_payoff(const ClopenAntichain& p) {
  std::string out = "payoff clopen v1\n";
  for (const auto& [s, w] : p.entries()) {
    out += std::string(to_string(w)) + ":";
    if (!s.empty()) out += " " + join_seq(s);
    out += "\n";
  }
  if (p.default_winner()) out += "default: " + std::string(to_string(*p.default_winner())) + "\n";
  return out;
}

inline std::string serialize_payoff(const DiffPayoff& d) {
  std::string out = "payoff diff v1 k=" + std::to_string(d.k()) + (d.complemented ? " complement" : "") + "\n";
  for (std::size_t i = 0; i < d.levels.size(); ++i) {
    out += "level " + std::to_string(i + 1) + ":\n";
    for (const Seq& g : d.levels[i].generators) out += (g.empty() ? std::string(".") : join_seq(g)) + "\n";
  }
  return out;
}

inline std::string serialize_payoff(const AnyPayoff& p) {
  return std::visit([](const auto& x) { return serialize_payoff(x); }, p);
}

inline RestrictedStrategy parse_strategy(std::string_view text) {
  std::string_view header;
  auto lines = io_detail::split(text, &header);
  std::optional<Player> owner;
  if (header.rfind("strategy v1 owner=", 0) == 0) owner = parse_player(header.substr(18));
  if (!owner) throw SyntaxError(1, "expected 'strategy v1 owner=I|II'");
  RestrictedStrategy s{*owner, io_detail::parse_node_lines(lines)};
  for (const Seq& n : s.nodes) {
    if (!n.empty() && !s.contains(prefix(n, n.size() - 1))) {
      throw StrategyError(StrategyError::Kind::MissingPrefix, n, "MissingPrefix(" + format_seq(n) + ")");
    }
  }
  return s;
}

inline std::string serialize_strategy(const RestrictedStrategy& s) {
  std::string out = "strategy v1 owner=" + std::string(to_string(s.owner)) + "\n";
  for (const Seq& n : s.nodes) {
    if (!n.empty()) out += join_seq(n) + "\n";
  }
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace bcg
