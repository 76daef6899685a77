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
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace bcg {

// A move, and one entry of a node sequence.
using Label = std::uint64_t;

// Finite sequence of naturals. std::vector's ordering is lexicographic with
// proper prefixes first, which is the iteration order used everywhere.
using Seq = std::vector<Label>;

enum class Player : std::uint8_t { I = 0, II = 1 };

constexpr Player opponent(Player p) noexcept {
  return p == Player::I ? Player::II : Player::I;
}

// Player I moves at even plies (0-based), so the mover at a position is
// determined by the position's length.
constexpr Player mover_at(std::size_t ply) noexcept {
  return ply % 2 == 0 ? Player::I : Player::II;
}

inline std::string_view to_string(Player p) noexcept {
  return p == Player::I ? "I" : "II";
}

inline std::optional<Player> parse_player(std::string_view text) noexcept {
  if (text == "I") return Player::I;
  if (text == "II") return Player::II;
  return std::nullopt;
}

inline Seq prefix(const Seq& s, std::size_t n) {
  return Seq(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(std::min(n, s.size())));
}

inline bool is_prefix(const Seq& p, const Seq& s) noexcept {
  if (p.size() > s.size()) return false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] != s[i]) return false;
  }
  return true;
}

inline Seq extend(Seq s, Label x) {
  s.push_back(x);
  return s;
}

inline Seq concat(Seq a, const Seq& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// "<1,3>" style rendering used in messages and reports.
inline std::string format_seq(const Seq& s) {
  std::ostringstream os;
  os << '<';
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) os << ',';
    os << s[i];
  }
  os << '>';
  return os.str();
}

// Space-separated decimal rendering used by the text file formats.
inline std::string join_seq(const Seq& s) {
  std::ostringstream os;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) os << ' ';
    os << s[i];
  }
  return os.str();
}

}  // namespace bcg
