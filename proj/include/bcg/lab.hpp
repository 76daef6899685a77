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
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "bcg/embedding.hpp"
#include "bcg/game.hpp"
#include "bcg/io.hpp"
#include "bcg/payoff.hpp"
#include "bcg/reduction.hpp"
#include "bcg/solver.hpp"
#include "bcg/strategy.hpp"
#include "bcg/tree.hpp"

// Verification campaigns over enumerated and seeded instance corpora.
//
// Randomness comes from std::mt19937_64, whose output sequence is fixed by
// the C++ standard; values are drawn as raw 64-bit words reduced with `%`
// (no std distributions, whose algorithms differ between libraries). Seeds
// for sub-streams are derived with the SplitMix64 finalizer.
namespace bcg::lab {

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  auto fin = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return fin(fin(fin(seed) ^ a) ^ b);
}

// Total antichains at the given depth: a random default, plus entries where a
// randomly cut node or a depth-`depth` node disagrees with it.
inline std::vector<ClopenAntichain> random_payoffs(const FiniteTree& tree, std::size_t count, std::uint64_t seed,
                                                   std::size_t depth) {
  std::mt19937_64 rng(seed);
  std::vector<ClopenAntichain> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const Player fallback = rng() % 2 ? Player::I : Player::II;
    std::map<Seq, Player> entries;
    std::vector<FiniteTree::NodeId> stack{0};
    while (!stack.empty()) {
      auto id = stack.back();
      stack.pop_back();
      const Seq& n = tree.node(id);
      auto kids = tree.children(id);
      const bool at_depth = n.size() == depth;
      if (n.size() > depth || (!at_depth && kids.empty())) continue;
      if (at_depth || rng() % 4 == 0) {
        Player w = rng() % 2 ? Player::I : Player::II;
        if (w != fallback) entries.emplace(n, w);
        continue;
      }
      for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
    }
    out.emplace_back(std::move(entries), fallback);
  }
  return out;
}

// Random binary choice tree with `size` nodes and labels below `max_label`.
inline FiniteTree random_tree(std::uint64_t seed, std::size_t size, Label max_label = 10) {
  std::mt19937_64 rng(seed);
  std::set<Seq> nodes{Seq{}};
  std::vector<Seq> open{Seq{}};
  while (nodes.size() < size && !open.empty()) {
    std::size_t pick = rng() % open.size();
    Seq parent = open[pick];
    Label x = rng() % max_label;
    Seq child = extend(parent, x);
    if (nodes.count(child)) continue;
    nodes.insert(child);
    open.push_back(child);
    std::size_t kids = 0;
    for (Label y = 0; y < max_label; ++y) kids += nodes.count(extend(parent, y));
    if (kids == 2) open.erase(open.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return FiniteTree::from_nodes(nodes);
}

// Order-preserving relabelling with arbitrary increasing naturals, so the
// result is generally not a {0,1}-tree.
inline FiniteTree spread_labels(const FiniteTree& t, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::map<Seq, Seq> image{{Seq{}, Seq{}}};
  for (FiniteTree::NodeId id = 0; id < t.size(); ++id) {
    Label next = rng() % 5;
    for (auto c : t.children(id)) {
      image[t.node(c)] = extend(image[t.node(id)], next);
      next += 1 + rng() % 5;
    }
  }
  std::set<Seq> nodes;
  for (auto& [k, v] : image) nodes.insert(v);
  return FiniteTree::from_nodes(nodes);
}

// Canonical path <1,...,1> of length `length` with one decoy child at the
// root, on the right (<2>) or the left (path under 2, decoy <1>).
inline FiniteTree tall_tree(std::size_t length, bool decoy_left) {
  const Label path_label = decoy_left ? 2 : 1;
  std::set<Seq> nodes{Seq{}, Seq{decoy_left ? Label{1} : Label{2}}};
  Seq s;
  for (std::size_t i = 0; i < length; ++i) {
    s.push_back(i == 0 ? path_label : 1);
    nodes.insert(s);
  }
  return FiniteTree::from_nodes(nodes);
}

inline const std::vector<std::string>& all_suites() {
  static const std::vector<std::string> names{"oracle", "def34", "reduction", "bounds", "embedding", "tall", "codec"};
  return names;
}

inline const std::vector<std::string>& default_suites() {
  static const std::vector<std::string> names{"oracle", "def34", "reduction", "bounds", "embedding"};
  return names;
}

struct CampaignConfig {
  std::size_t max_size = 6;
  std::size_t payoffs_per_tree = 20;
  std::uint64_t seed = 7;
  std::vector<std::string> suites = default_suites();
  std::size_t max_depth = 4;                 // payoff decision depth is drawn from 1..max_depth
  std::size_t def34_max_size = 5;            // regular-strategy spaces grow fastest
  std::size_t exhaustive_bound_max_size = 5;  // every winning II answer table
  std::size_t embedding_instances = 200;
  std::size_t tall_min = 12;
  std::size_t tall_max = 20;
  unsigned threads = 0;  // 0: hardware concurrency
};

// A failing instance, in the file formats so it can be fed back to the CLI.
struct Counterexample {
  std::string suite;
  std::string tree;
  std::string payoff;  // empty for exit-only and reduction instances
  std::size_t decision_depth = 0;
  std::string expected;
  std::string observed;
  std::string detail;
};

struct SuiteResult {
  std::string name;
  std::size_t instances = 0;
  std::size_t passed = 0;
  std::vector<Counterexample> counterexamples;

  std::size_t failed() const noexcept { return instances - passed; }
  bool ok() const noexcept { return instances > 0 && passed == instances; }
};

struct Report {
  CampaignConfig config;
  std::vector<SuiteResult> suites;
  double wall_seconds = 0;  // not part of the text report, which is deterministic

  bool all_passed() const {
    return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.ok(); });
  }

  std::size_t total_instances() const {
    std::size_t n = 0;
    for (const auto& s : suites) n += s.instances;
    return n;
  }

  std::string to_text() const {
    std::ostringstream os;
    os << "bcg lab report\n";
    os << "config: max_size=" << config.max_size << " payoffs_per_tree=" << config.payoffs_per_tree
       << " seed=" << config.seed << " max_depth=" << config.max_depth << "\n";
    for (const auto& s : suites) {
      os << "suite " << s.name << ": " << (s.ok() ? "PASS" : "FAIL") << " " << s.passed << "/" << s.instances << "\n";
      for (const auto& c : s.counterexamples) {
        os << "  counterexample expected=" << c.expected << " observed=" << c.observed << " depth=" << c.decision_depth
           << " " << c.detail << "\n";
        os << "  --- tree\n" << c.tree;
        if (!c.payoff.empty()) os << "  --- payoff\n" << c.payoff;
      }
    }
    os << "instances: " << total_instances() << "\n";
    os << "result: " << (all_passed() ? "PASS" : "FAIL") << "\n";
    return os.str();
  }
};

struct Verdict {
  bool pass = false;
  std::string expected;
  std::string observed;
  std::string detail;
};

// One unit of campaign work: everything needed to rerun it.
struct Instance {
  std::string suite;
  FiniteTree tree;
  std::optional<ClopenAntichain> payoff;
  std::size_t decision_depth = 0;
};

namespace detail {

inline std::string winner_text(Player p) { return std::string(to_string(p)); }

inline Verdict check_oracle(const Instance& in) {
  Game g(in.tree, *in.payoff, in.decision_depth);
  SolveResult r = solve(g);
  Player oracle = brute_force_oracle(g);
  bool cert = verify_winning(g, r.strategy).certified;
  Verdict v{oracle == r.winner && cert, winner_text(oracle), winner_text(r.winner), cert ? "" : "strategy not certified"};
  return v;
}

inline Verdict check_def34(const Instance& in) {
  Game g(in.tree, *in.payoff, in.decision_depth);
  Def34Report rep = check_def3_def4(g);
  Player solved = solve(g).winner;
  return {rep.agree() && rep.def4 == solved, "def4=" + winner_text(rep.def4), "def3=" + winner_text(rep.def3),
          rep.def4 == solved ? "" : "solver disagrees"};
}

inline Verdict check_reduction(const Instance& in) {
  ReductionGame g(in.tree);
  SolveResult r = solve(g);
  const bool cert = verify_winning(g, r.strategy).certified;
  const std::size_t most = max_legal_moves(g);
  const bool binary = most <= 2;
  const std::size_t longest = longest_play(g);
  const bool finite = longest <= 12 * in.tree.height() + 20;
  // The same game as an explicit exit-only tree; from_nodes rejects a node
  // with more than two successors.
  const Player explicit_winner = solve(Game::pure_exit(materialize(g))).winner;
  std::string detail;
  if (explicit_winner != r.winner) detail += "materialized tree disagrees; ";
  if (!cert) detail += "strategy not certified; ";
  if (!binary) detail += std::to_string(most) + " legal moves at some position; ";
  if (!finite) detail += "play of " + std::to_string(longest) + " plies; ";
  return {r.winner == Player::II && cert && binary && finite && explicit_winner == r.winner, "II", winner_text(r.winner), detail};
}

inline Verdict check_bounds(const Instance& in, std::size_t exhaustive_max) {
  ReductionGame g(in.tree);
  Solver<ReductionGame> solver(g);
  SolveResult r = solver.solve();
  if (r.winner != Player::II) return {false, "II", winner_text(r.winner), "reduction won by I"};
  BranchReport br = extract_branch(g, r.strategy, in.tree.height() + 2);
  bool ok = br.fail_index.has_value() && br.bound_holds;
  for (std::size_t n = 0; ok && n < *br.fail_index; ++n) {
    Seq fn = prefix(br.f, n);
    ok = in.tree.contains(fn) && !in.tree.children(in.tree.find(fn)).empty();
  }
  if (!ok) return {false, "bound", "violated", "solver strategy: f=" + format_seq(br.f)};
  if (in.tree.size() > exhaustive_max) return {true, "bound", "bound", ""};

  // Every combination of phase-2 answers, completed with best play; those
  // that certify are exactly II's winning strategies up to what extraction
  // can observe.
  std::vector<Seq> ts = in.tree.nodes();
  std::vector<std::vector<std::pair<Label, Label>>> options;
  for (const Seq& t : ts) options.push_back(u0_options(g, t));
  std::vector<std::size_t> idx(ts.size(), 0);
  std::size_t winning = 0;
  while (true) {
    std::map<Seq, std::pair<Label, Label>> answers;
    for (std::size_t i = 0; i < ts.size(); ++i) answers[ts[i]] = options[i][idx[i]];
    RestrictedStrategy tau = strategy_with_answers(g, solver, answers);
    if (verify_winning(g, tau).certified) {
      ++winning;
      BranchReport b = extract_branch(g, tau, in.tree.height() + 2);
      if (!b.fail_index || !b.bound_holds) {
        return {false, "bound", "violated", "enumerated strategy: f=" + format_seq(b.f)};
      }
    }
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == options[k].size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return {winning > 0, "bound", winning > 0 ? "bound" : "no winning strategy", ""};
}

inline Verdict check_embedding(const Instance& in) {
  RhoMap rho = build_rho(in.tree);
  for (const auto& [s, b] : rho.forward) {
    if (s.size() != b.size() || rho.preimage(b) != s) return {false, "rho bijective", "not", format_seq(s)};
  }
  if (rho.range_tree.size() != in.tree.size()) return {false, "rho injective", "not", ""};
  Game source(in.tree, *in.payoff, in.decision_depth);
  Game range(rho.range_tree, push_payoff(rho, *in.payoff), in.decision_depth);
  SolveResult rs = solve(source);
  SolveResult rr = solve(range);
  RestrictedStrategy pulled = pull_back_strategy(rho, rr.strategy);
  const bool cert = verify_winning(source, pulled).certified;
  return {rs.winner == rr.winner && cert, winner_text(rs.winner), winner_text(rr.winner),
          cert ? "" : "pulled-back strategy not certified"};
}

inline Verdict check_tall(const Instance& in) {
  ReductionGame g(in.tree);
  SolveResult r = solve(g);
  BranchReport br = extract_branch(g, r.strategy, in.tree.height() + 2);
  Seq longest;
  for (const Seq& s : in.tree.nodes()) {
    if (s.size() > longest.size()) longest = s;
  }
  return {br.f == longest, format_seq(longest), format_seq(br.f), ""};
}

inline Verdict check_codec(const Instance& in) {
  std::string t1 = serialize_tree(in.tree);
  FiniteTree back = parse_tree(t1);
  if (!(back == in.tree) || serialize_tree(back) != t1) return {false, "tree round-trip", "mismatch", ""};
  std::string p1 = serialize_payoff(*in.payoff);
  auto p2 = parse_payoff(p1);
  if (!std::holds_alternative<ClopenAntichain>(p2) || !(std::get<ClopenAntichain>(p2) == *in.payoff) ||
      serialize_payoff(p2) != p1) {
    return {false, "payoff round-trip", "mismatch", ""};
  }
  // Two-level difference payoff built from the entries: U1 = I's, U2 = II's.
  DiffPayoff d;
  d.levels.resize(2);
  for (const auto& [s, w] : in.payoff->entries()) d.levels[w == Player::I ? 0 : 1].generators.insert(s);
  std::string d1 = serialize_payoff(d);
  auto d2 = parse_payoff(d1);
  if (!std::holds_alternative<DiffPayoff>(d2) || !(std::get<DiffPayoff>(d2) == d) || serialize_payoff(d2) != d1) {
    return {false, "diff round-trip", "mismatch", ""};
  }
  Game g(in.tree, *in.payoff, in.decision_depth);
  for (const RestrictedStrategy& s : {solve(g).strategy, solve(Game::pure_exit(in.tree)).strategy}) {
    std::string s1 = serialize_strategy(s);
    RestrictedStrategy back_s = parse_strategy(s1);
    if (!(back_s == s) || serialize_strategy(back_s) != s1) return {false, "strategy round-trip", "mismatch", ""};
  }
  return {true, "round-trip", "round-trip", ""};
}

}  // namespace detail

inline Verdict check_instance(const Instance& in, const CampaignConfig& cfg) {
  try {
    if (in.suite == "oracle") return detail::check_oracle(in);
    if (in.suite == "def34") return detail::check_def34(in);
    if (in.suite == "reduction") return detail::check_reduction(in);
    if (in.suite == "bounds") return detail::check_bounds(in, cfg.exhaustive_bound_max_size);
    if (in.suite == "embedding") return detail::check_embedding(in);
    if (in.suite == "tall") return detail::check_tall(in);
    if (in.suite == "codec") return detail::check_codec(in);
    return {false, "known suite", in.suite, "unknown suite"};
  } catch (const std::exception& e) {
    return {false, "no error", "error", e.what()};
  }
}

inline std::vector<Instance> build_instances(const std::string& suite, const CampaignConfig& cfg) {
  std::vector<Instance> out;
  auto payoff_instances = [&](std::size_t max_size) {
    auto trees = enumerate_trees(max_size, false);
    for (std::size_t i = 0; i < trees.size(); ++i) {
      for (std::size_t j = 0; j < cfg.payoffs_per_tree; ++j) {
        std::size_t depth = 1 + j % cfg.max_depth;
        auto p = random_payoffs(trees[i], 1, mix_seed(cfg.seed, i, j), depth).front();
        out.push_back({suite, trees[i], std::move(p), depth});
      }
    }
  };
  if (suite == "oracle") {
    payoff_instances(cfg.max_size);
  } else if (suite == "def34") {
    payoff_instances(std::min(cfg.max_size, cfg.def34_max_size));
  } else if (suite == "reduction" || suite == "bounds") {
    for (auto& t : enumerate_trees(cfg.max_size, true)) out.push_back({suite, std::move(t), std::nullopt, 0});
  } else if (suite == "embedding") {
    for (std::size_t i = 0; i < cfg.embedding_instances; ++i) {
      std::uint64_t s = mix_seed(cfg.seed, 0xe3b, i);
      std::size_t size = 1 + s % std::max<std::size_t>(cfg.max_size, 1);
      FiniteTree t = random_tree(mix_seed(s, 1), size);
      std::size_t depth = 1 + mix_seed(s, 2) % cfg.max_depth;
      auto p = random_payoffs(t, 1, mix_seed(s, 3), depth).front();
      out.push_back({suite, std::move(t), std::move(p), depth});
    }
  } else if (suite == "tall") {
    for (std::size_t len = cfg.tall_min; len <= cfg.tall_max; ++len) {
      out.push_back({suite, tall_tree(len, false), std::nullopt, 0});
      out.push_back({suite, tall_tree(len, true), std::nullopt, 0});
    }
  } else if (suite == "codec") {
    auto trees = enumerate_trees(cfg.max_size, false);
    for (std::size_t i = 0; i < trees.size(); ++i) {
      FiniteTree t = spread_labels(trees[i], mix_seed(cfg.seed, 0xc0dec, i));
      std::size_t depth = 1 + i % cfg.max_depth;
      auto p = random_payoffs(t, 1, mix_seed(cfg.seed, 0xc0de, i), depth).front();
      out.push_back({suite, std::move(t), std::move(p), depth});
    }
  } else {
    throw Error("unknown suite '" + suite + "'");
  }
  return out;
}

// Runs fn(0..n-1) on a pool of threads; results are stored by index, so the
// outcome does not depend on scheduling.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t n, unsigned threads, Fn fn) {
  std::vector<T> out(n);
  unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n, 1)));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) out[i] = fn(i);
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return out;
}

inline std::string payoff_text(const Instance& in) {
  return in.payoff ? serialize_payoff(*in.payoff) : std::string{};
}

inline SuiteResult run_suite(const std::string& suite, const CampaignConfig& cfg) {
  SuiteResult res;
  res.name = suite;
  auto instances = build_instances(suite, cfg);
  auto verdicts = parallel_map<Verdict>(instances.size(), cfg.threads,
                                        [&](std::size_t i) { return check_instance(instances[i], cfg); });
  res.instances = instances.size();
  for (std::size_t i = 0; i < instances.size(); ++i) {
    if (verdicts[i].pass) {
      ++res.passed;
    } else {
      const auto& in = instances[i];
      res.counterexamples.push_back({suite, serialize_tree(in.tree), payoff_text(in), in.decision_depth,
                                     verdicts[i].expected, verdicts[i].observed, verdicts[i].detail});
    }
  }
  return res;
}

inline Report run_campaign(const CampaignConfig& cfg) {
  auto start = std::chrono::steady_clock::now();
  Report rep;
  rep.config = cfg;
  for (const auto& s : cfg.suites) rep.suites.push_back(run_suite(s, cfg));
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

// Reruns a reported counterexample and returns the verdict it now produces.
inline Verdict replay_counterexample(const Counterexample& c, const CampaignConfig& cfg = {}) {
  Instance in{c.suite, parse_tree(c.tree), std::nullopt, c.decision_depth};
  if (!c.payoff.empty()) in.payoff = std::get<ClopenAntichain>(parse_payoff(c.payoff));
  return check_instance(in, cfg);
}

}  // namespace bcg::lab
