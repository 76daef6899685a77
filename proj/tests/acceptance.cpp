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

// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "bcg/bcg.hpp"

namespace {

using bcg::lab::CampaignConfig;
using bcg::lab::SuiteResult;

struct Criterion {
  const char* id;
  const char* title;
  std::function<SuiteResult()> run;
};

CampaignConfig base() {
  CampaignConfig cfg;
  cfg.seed = 7;
  cfg.payoffs_per_tree = 20;
  cfg.max_depth = 4;
  return cfg;
}

SuiteResult suite(const char* name, CampaignConfig cfg) { return bcg::lab::run_suite(name, cfg); }

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"C1", "oracle equivalence, trees <= 6 nodes x 20 payoffs, depth <= 4",
       [] {
         auto cfg = base();
         cfg.max_size = 6;
         return suite("oracle", cfg);
       }},
      {"C2", "regular (psi) and restricted semantics agree, trees <= 5 nodes",
       [] {
         auto cfg = base();
         cfg.max_size = 5;
         cfg.def34_max_size = 5;
         return suite("def34", cfg);
       }},
      {"C3", "reduction game won by II, certified, <= 2 legal moves, zero-free trees <= 9 nodes",
       [] {
         auto cfg = base();
         cfg.max_size = 9;
         return suite("reduction", cfg);
       }},
      {"C4", "cardinality bound for the solver strategy (<= 9 nodes) and every winning strategy (<= 5 nodes)",
       [] {
         auto cfg = base();
         cfg.max_size = 9;
         cfg.exhaustive_bound_max_size = 5;
         return suite("bounds", cfg);
       }},
      {"C5", "branch extraction follows the long path, tall trees of length 12..20",
       [] {
         auto cfg = base();
         cfg.tall_min = 12;
         cfg.tall_max = 20;
         return suite("tall", cfg);
       }},
      {"C6", "embedding preserves the winner and pulls back a certified strategy, 200 instances",
       [] {
         auto cfg = base();
         cfg.max_size = 9;
         cfg.embedding_instances = 200;
         return suite("embedding", cfg);
       }},
      {"C7", "tree, payoff and strategy files round-trip, trees <= 9 nodes",
       [] {
         auto cfg = base();
         cfg.max_size = 9;
         return suite("codec", cfg);
       }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    SuiteResult r;
    std::string error;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = error.empty() && r.ok() && secs < 60.0;
    failed += !pass;
    std::printf("[%s] %s %s: %zu/%zu (%.2f s)%s%s\n", pass ? "PASS" : "FAIL", c.id, c.title, r.passed, r.instances,
                secs, error.empty() ? "" : " error: ", error.c_str());
    for (std::size_t i = 0; i < r.counterexamples.size() && i < 3; ++i) {
      const auto& ce = r.counterexamples[i];
      std::printf("    counterexample: expected=%s observed=%s %s\n%s", ce.expected.c_str(), ce.observed.c_str(),
                  ce.detail.c_str(), ce.tree.c_str());
    }
    std::fflush(stdout);
  }
  std::printf("%s: %zu/%zu criteria passed\n", failed ? "FAIL" : "PASS", criteria.size() - failed, criteria.size());
  return failed ? 1 : 0;
}
