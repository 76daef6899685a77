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
#include <stdexcept>
#include <string>

#include "bcg/seq.hpp"

namespace bcg {

// Root of every error thrown by the library. The CLI maps these to exit
// status 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TreeError : public Error {
 public:
  enum class Kind { MissingPrefix, TooManySuccessors, NodeNotInTree };

  TreeError(Kind kind, Seq node)
      : Error(describe(kind, node)), kind_(kind), node_(std::move(node)) {}

  Kind kind() const noexcept { return kind_; }
  const Seq& node() const noexcept { return node_; }

  static std::string describe(Kind kind, const Seq& node) {
    switch (kind) {
      case Kind::MissingPrefix:
        return "MissingPrefix(" + format_seq(node) + ")";
      case Kind::TooManySuccessors:
        return "TooManySuccessors(" + format_seq(node) + ")";
      case Kind::NodeNotInTree:
        return "NodeNotInTree(" + format_seq(node) + ")";
    }
    return "TreeError";
  }

 private:
  Kind kind_;
  Seq node_;
};

// Malformed text input; line numbers are 1-based.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, const std::string& what)
      : Error("SyntaxError(line " + std::to_string(line) + "): " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class PayoffError : public Error {
 public:
  enum class Kind { PrefixTooShort, NotAntichain, Undecided, PrefixNotInSource, BadLevels };

  PayoffError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

class StrategyError : public Error {
 public:
  enum class Kind {
    NotExactlyOne,
    MissingOpponentOption,
    NotInGame,
    MissingPrefix,
    MissingRoot,
    NotAPath,
    UndefinedAt,
    NotWinning,
  };

  StrategyError(Kind kind, Seq node, const std::string& what)
      : Error(what), kind_(kind), node_(std::move(node)) {}
  Kind kind() const noexcept { return kind_; }
  const Seq& node() const noexcept { return node_; }

 private:
  Kind kind_;
  Seq node_;
};

class SolverError : public Error {
 public:
  enum class Kind { UndecidedGame, Infeasible, NotDetermined };

  SolverError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

class ReductionError : public Error {
 public:
  enum class Kind { ZeroLabeledTree, IllegalPosition, NotTerminal };

  ReductionError(Kind kind, std::size_t ply, const std::string& what)
      : Error(what), kind_(kind), ply_(ply) {}
  Kind kind() const noexcept { return kind_; }
  // First offending ply for IllegalPosition; otherwise the play length.
  std::size_t ply() const noexcept { return ply_; }

 private:
  Kind kind_;
  std::size_t ply_;
};

}  // namespace bcg
