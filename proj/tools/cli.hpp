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

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bcg/bcg.hpp"

namespace bcg::cli {

using nlohmann::json;

enum ExitCode : int { kOk = 0, kValidation = 1, kUsage = 2, kSuiteFailure = 3 };

namespace detail {

inline json seq_json(const Seq& s) { return json(s); }

inline json strategy_json(const RestrictedStrategy& s) {
  json a = json::array();
  for (const Seq& n : s.nodes) a.push_back(n);
  return a;
}

inline void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw Error("cannot write " + out_path);
  f << text;
}

inline ClopenAntichain load_payoff(const std::string& path, const FiniteTree& tree) {
  AnyPayoff p = parse_payoff(read_file(path));
  if (auto* c = std::get_if<ClopenAntichain>(&p)) return *c;
  return compile(std::get<DiffPayoff>(p), tree);
}

inline Game make_game(const FiniteTree& tree, const std::string& payoff_path, std::optional<std::size_t> depth) {
  if (payoff_path.empty()) return Game::pure_exit(tree);
  ClopenAntichain phi = load_payoff(payoff_path, tree);
  return Game(tree, phi, depth.value_or(phi.decision_depth()));
}

// Height of the deepest path below each node, for I's demonstration line.
inline std::size_t depth_below(const FiniteTree& t, FiniteTree::NodeId id) {
  std::size_t best = 0;
  for (auto c : t.children(id)) best = std::max(best, 1 + depth_below(t, c));
  return best;
}

// A complete play where II follows `tau` and I signals t = <> at once, then
// builds v as deep as possible away from u0.
inline Seq demonstration_play(const ReductionGame& g, const RestrictedStrategy& tau) {
  const FiniteTree& src = g.source();
  Seq play;
  ReductionState s = g.initial();
  while (s.phase != Phase::Over) {
    auto moves = g.legal_moves(s);
    Label m = moves.front();
    if (g.to_move(s) == Player::II) {
      for (Label x : moves) {
        if (tau.contains(extend(play, x))) m = x;
      }
    } else if (!g.is_idle_turn(s)) {
      if (s.phase == Phase::BuildT) {
        m = 1;
      } else if (s.step == Step::Control) {
        m = moves.size() == 2 && (s.cur != s.t_node || src.children(s.cur).size() == 2 ||
                                  src.node(src.children(s.cur).front()).back() != s.u0)
                ? 0
                : 1;
      } else if (s.step == Step::PickB && moves.size() == 2) {
        auto kids = src.children(s.cur);
        bool right_better = depth_below(src, kids[1]) > depth_below(src, kids[0]);
        if (s.cur == s.t_node) right_better = src.node(kids[0]).back() == s.u0;
        m = right_better ? moves[1] : moves[0];
      }
    }
    play.push_back(m);
    s = *g.play(s, m);
  }
  return play;
}

inline json transcript_json(const ReductionGame& g, const Seq& play) {
  DecodedPosition d = decode(g, play);
  RuleVerdict v = terminal_winner(g, play);
  return {{"t", d.so_far.t},           {"u0", d.so_far.u0},
          {"v", d.so_far.v},           {"u_prime", d.so_far.u_prime},
          {"winner", to_string(v.winner)}, {"rule_fired", v.rule},
          {"moves", play}};
}

inline json branch_json(const FiniteTree& source, const BranchReport& br) {
  json theta = json::array();
  const std::size_t upto = br.fail_index ? *br.fail_index : br.f.size();
  for (std::size_t n = 0; n <= upto && n <= br.f.size(); ++n) {
    Seq fn = prefix(br.f, n);
    auto id = source.find(fn);
    theta.push_back(id != FiniteTree::npos && !source.children(id).empty());
  }
  return {{"f", br.f},
          {"fail_index", br.fail_index ? json(*br.fail_index) : json(nullptr)},
          {"bound_holds", br.bound_holds},
          {"theta", theta}};
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace detail

// Entry point shared by the executable and the tests.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Binary choice games: solve, verify, and run reduction-game campaigns"};
  app.require_subcommand(1);

  std::string tree_path, payoff_path, strategy_path, out_path, semantics = "def4", suites_arg;
  bool as_json = false, do_extract = false;
  std::optional<std::size_t> depth;
  std::size_t max_steps = 0;

  auto* solve_cmd = app.add_subcommand("solve", "Solve G(T, phi) by backward induction and cross-check it");
  solve_cmd->add_option("--tree", tree_path, "Tree file")->required();
  solve_cmd->add_option("--payoff", payoff_path, "Payoff file (exit-only game when omitted)");
  solve_cmd->add_option("--depth", depth, "Decision depth (default: the payoff's)");
  solve_cmd->add_option("--semantics", semantics, "def3 (regular strategies, psi) or def4 (restricted)")
      ->check(CLI::IsMember({"def3", "def4"}));
  solve_cmd->add_option("--out", out_path, "Write the winning strategy file here");
  solve_cmd->add_flag("--json", as_json, "JSON output");

  auto* reduce_cmd = app.add_subcommand("reduce", "Build and solve the four-phase reduction game over T");
  reduce_cmd->add_option("--tree", tree_path, "Source tree file")->required();
  reduce_cmd->add_flag("--extract", do_extract, "Also extract the branch from II's strategy");
  reduce_cmd->add_option("--max-steps", max_steps, "Branch extraction step limit");
  reduce_cmd->add_flag("--json", as_json, "JSON output");

  auto* extract_cmd = app.add_subcommand("extract", "Extract f(n) = u0(tau(f[n])) from II's winning strategy");
  extract_cmd->add_option("--tree", tree_path, "Source tree file")->required();
  extract_cmd->add_option("--max-steps", max_steps, "Step limit");
  extract_cmd->add_flag("--json", as_json, "JSON output");

  auto* embed_cmd = app.add_subcommand("embed", "Embed T into the {0,1}-tree and pull strategies back");
  embed_cmd->add_option("--tree", tree_path, "Tree file")->required();
  embed_cmd->add_option("--payoff", payoff_path, "Payoff file (exit-only game when omitted)");
  embed_cmd->add_option("--depth", depth, "Decision depth (default: the payoff's)");
  embed_cmd->add_flag("--json", as_json, "JSON output");

  auto* fmt_cmd = app.add_subcommand("fmt", "Validate and print files in canonical form");
  fmt_cmd->add_option("--tree", tree_path, "Tree file");
  fmt_cmd->add_option("--payoff", payoff_path, "Payoff file");
  fmt_cmd->add_option("--strategy", strategy_path, "Strategy file");
  fmt_cmd->add_option("--out", out_path, "Output file");

  lab::CampaignConfig cfg;
  auto* lab_cmd = app.add_subcommand("lab", "Run verification campaigns");
  lab_cmd->add_option("--max-size", cfg.max_size, "Largest enumerated tree");
  lab_cmd->add_option("--payoffs-per-tree", cfg.payoffs_per_tree, "Random payoffs per tree");
  lab_cmd->add_option("--seed", cfg.seed, "Campaign seed");
  lab_cmd->add_option("--suites", suites_arg, "Comma-separated subset of oracle,def34,reduction,bounds,embedding,tall,codec");
  lab_cmd->add_option("--threads", cfg.threads, "Worker threads (0: all cores)");
  lab_cmd->add_option("--out", out_path, "Report file");
  lab_cmd->add_flag("--json", as_json, "JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  try {
    if (solve_cmd->parsed()) {
      FiniteTree tree = parse_tree(read_file(tree_path));
      Game g = detail::make_game(tree, payoff_path, depth);
      SolveResult r = solve(g);
      if (!verify_winning(g, r.strategy).certified) throw Error("internal: solver strategy failed certification");
      std::optional<Player> oracle, def3;
      try {
        oracle = brute_force_oracle(g);
      } catch (const SolverError& e) {
        if (e.kind() != SolverError::Kind::Infeasible) throw;
      }
      try {
        def3 = def3_winner(g);
      } catch (const SolverError& e) {
        if (e.kind() != SolverError::Kind::Infeasible) throw;
      }
      if (semantics == "def3" && !def3) throw SolverError(SolverError::Kind::Infeasible, "def3 semantics infeasible here");
      const Player winner = semantics == "def3" ? *def3 : r.winner;
      const bool oracle_ok = !oracle || *oracle == r.winner;
      const bool agree = oracle && def3 && *oracle == *def3;
      if (!out_path.empty()) detail::emit(serialize_strategy(r.strategy), out_path, out);
      if (as_json) {
        json j{{"winner", to_string(winner)},
               {"strategy_nodes", detail::strategy_json(r.strategy)},
               {"explored", r.explored},
               {"oracle_checked", oracle.has_value()},
               {"def3_def4_agree", oracle && def3 ? json(agree) : json(nullptr)}};
        out << j.dump() << "\n";
      } else {
        out << "winner: " << to_string(winner) << "\n"
            << "explored: " << r.explored << "\n"
            << "oracle: " << (oracle ? (oracle_ok ? "agrees" : "DISAGREES") : "skipped (infeasible)") << "\n"
            << "def3/def4: " << (oracle && def3 ? (agree ? "agree" : "DISAGREE") : "skipped (infeasible)") << "\n"
            << serialize_strategy(r.strategy);
      }
      return oracle_ok && (!oracle || !def3 || agree) ? kOk : kSuiteFailure;
    }

    if (reduce_cmd->parsed() || extract_cmd->parsed()) {
      FiniteTree tree = parse_tree(read_file(tree_path));
      const bool shifted = !is_zero_free(tree);
      if (shifted) tree = zero_free_transform(tree);
      ReductionGame g(tree);
      Solver<ReductionGame> solver(g);
      SolveResult r = solver.solve();
      const bool cert = verify_winning(g, r.strategy).certified;
      const std::size_t steps = max_steps ? max_steps : tree.height() + 2;
      std::optional<BranchReport> br;
      if ((do_extract || extract_cmd->parsed()) && r.winner == Player::II) br = extract_branch(g, r.strategy, steps);
      if (extract_cmd->parsed()) {
        if (!br) throw Error("player I wins the reduction game; no branch to extract");
        if (as_json) {
          out << detail::branch_json(tree, *br).dump() << "\n";
        } else {
          out << "f: " << format_seq(br->f) << "\n"
              << "fail_index: " << (br->fail_index ? std::to_string(*br->fail_index) : "none") << "\n"
              << "bound_holds: " << (br->bound_holds ? "true" : "false") << "\n";
        }
        return br->bound_holds ? kOk : kSuiteFailure;
      }
      std::size_t states = 0;
      const std::size_t most = max_legal_moves(g, &states);
      json j{{"winner", to_string(r.winner)},
             {"certified", cert},
             {"zero_free_applied", shifted},
             {"explored", r.explored},
             {"strategy_size", r.strategy.nodes.size()},
             {"reachable_states", states},
             {"max_legal_moves", most}};
      if (r.winner == Player::II) j["transcript"] = detail::transcript_json(g, detail::demonstration_play(g, r.strategy));
      if (br) j["branch"] = detail::branch_json(tree, *br);
      if (as_json) {
        out << j.dump() << "\n";
      } else {
        out << "winner: " << to_string(r.winner) << (cert ? " (certified)" : " (NOT certified)") << "\n"
            << "reachable states: " << states << ", max legal moves: " << most << "\n";
        if (j.contains("transcript")) out << "demonstration: " << j["transcript"].dump() << "\n";
        if (br) out << "branch: " << j["branch"].dump() << "\n";
      }
      return r.winner == Player::II && cert && most <= 2 && (!br || br->bound_holds) ? kOk : kSuiteFailure;
    }

    if (embed_cmd->parsed()) {
      FiniteTree tree = parse_tree(read_file(tree_path));
      RhoMap rho = build_rho(tree);
      Game source = detail::make_game(tree, payoff_path, depth);
      Game range = payoff_path.empty() ? Game::pure_exit(rho.range_tree)
                                       : Game(rho.range_tree, push_payoff(rho, source.payoff()), source.decision_depth());
      SolveResult rs = solve(source), rr = solve(range);
      RestrictedStrategy pulled = pull_back_strategy(rho, rr.strategy);
      const bool cert = verify_winning(source, pulled).certified;
      json pairs = json::array();
      for (const auto& [s, b] : rho.forward) pairs.push_back({{"source", s}, {"image", b}});
      if (as_json) {
        out << json{{"pairs", pairs},
                    {"range_tree", serialize_tree(rho.range_tree)},
                    {"winner_source", to_string(rs.winner)},
                    {"winner_range", to_string(rr.winner)},
                    {"pulled_back_certified", cert}}
                   .dump()
            << "\n";
      } else {
        for (const auto& [s, b] : rho.forward) out << format_seq(s) << " -> " << format_seq(b) << "\n";
        out << "winner on T: " << to_string(rs.winner) << ", on range: " << to_string(rr.winner)
            << ", pulled-back strategy " << (cert ? "certified" : "NOT certified") << "\n";
      }
      return rs.winner == rr.winner && cert ? kOk : kSuiteFailure;
    }

    if (fmt_cmd->parsed()) {
      if (tree_path.empty() && payoff_path.empty() && strategy_path.empty()) {
        err << "error: fmt needs --tree, --payoff or --strategy\n";
        return kUsage;
      }
      std::string text;
      if (!tree_path.empty()) text += serialize_tree(parse_tree(read_file(tree_path)));
      if (!payoff_path.empty()) text += serialize_payoff(parse_payoff(read_file(payoff_path)));
      if (!strategy_path.empty()) text += serialize_strategy(parse_strategy(read_file(strategy_path)));
      detail::emit(text, out_path, out);
      return kOk;
    }

    if (lab_cmd->parsed()) {
      if (!suites_arg.empty()) {
        cfg.suites = detail::split_list(suites_arg);
        for (const auto& s : cfg.suites) {
          const auto& known = lab::all_suites();
          if (std::find(known.begin(), known.end(), s) == known.end()) {
            err << "error: unknown suite '" << s << "'\n";
            return kUsage;
          }
        }
      }
      if (cfg.max_size == 0) {
        err << "error: --max-size must be at least 1\n";
        return kUsage;
      }
      lab::Report rep = lab::run_campaign(cfg);
      std::string text;
      if (as_json) {
        json suites = json::array();
        for (const auto& s : rep.suites) {
          json ces = json::array();
          for (const auto& c : s.counterexamples) {
            ces.push_back({{"tree", c.tree}, {"payoff", c.payoff}, {"decision_depth", c.decision_depth},
                           {"expected", c.expected}, {"observed", c.observed}, {"detail", c.detail}});
          }
          suites.push_back({{"name", s.name}, {"instances", s.instances}, {"passed", s.passed},
                            {"failed", s.failed()}, {"counterexamples", ces}});
        }
        text = json{{"max_size", cfg.max_size}, {"payoffs_per_tree", cfg.payoffs_per_tree}, {"seed", cfg.seed},
                    {"suites", suites}, {"instances", rep.total_instances()}, {"all_passed", rep.all_passed()}}
                   .dump(2) +
               "\n";
      } else {
        text = rep.to_text();
      }
      detail::emit(text, out_path, out);
      err << "wall-clock: " << rep.wall_seconds << " s\n";
      return rep.all_passed() ? kOk : kSuiteFailure;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  }
  return kUsage;
}

}  // namespace bcg::cli
