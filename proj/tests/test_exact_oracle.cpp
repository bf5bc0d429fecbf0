// Copyright 2026 The nfvplace Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nfvplace/error.hpp"
#include "nfvplace/exact_oracle.hpp"
#include "nfvplace/vnfm_place.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace nfvplace;
using namespace nfvplace::testing;

namespace {

// Small instance with tight capacities so both terms of the objective move.
ProblemInstance tight_instance(int pops, int vnfs, std::uint64_t seed) {
  GeneratorConfig cfg;
  cfg.pop_count = pops;
  cfg.vnf_count = vnfs;
  cfg.area_side_km = 2500.0 + 250.0 * static_cast<double>(seed % 8);
  cfg.nfvo_capacity = 2 + static_cast<int>(seed % 4);
  cfg.vnfm_capacity = 1 + static_cast<int>(seed % 3);
  cfg.vnfm_delay_bound_ms = 15.0 + 5.0 * static_cast<double>(seed % 4);
  cfg.seed = seed;
  return generate_instance(cfg);
}

}  // namespace

TEST_CASE("single PoP") {
  const auto r = solve_exact(single_pop(5));
  CHECK(r.status == OracleStatus::kOptimal);
  REQUIRE(r.objective);
  CHECK(*r.objective == 2);
  CHECK(to_string(r.status) == "optimal");
}

TEST_CASE("forced split between two clusters") {
  const auto in = two_clusters(4);
  const auto r = solve_exact(in);
  REQUIRE(r.status == OracleStatus::kOptimal);
  CHECK(*r.objective == 4);
  CHECK(r.solution->nfvo_count() == 2);
  CHECK(r.solution->vnfm_count() == 2);
  CHECK(check_feasibility(in, *r.solution).feasible());
}

TEST_CASE("infeasible only after exhaustion") {
  const auto r = solve_exact(single_pop(25));
  CHECK(r.status == OracleStatus::kInfeasible);
  CHECK_FALSE(r.solution);
  CHECK_FALSE(r.objective);
  CHECK(to_string(r.status) == "infeasible");
}

TEST_CASE("budget exhaustion is reported as such") {
  const auto in = tight_instance(7, 14, 3);
  OracleBudget tiny;
  tiny.max_nodes = 3;
  const auto r = solve_exact(in, tiny);
  CHECK(r.status == OracleStatus::kBudgetExceeded);
  CHECK(r.nodes_explored <= 3);
  CHECK(to_string(r.status) == "budget_exceeded");
  if (r.solution) CHECK(check_feasibility(in, *r.solution).feasible());
  OracleBudget none;
  none.time_limit_s = 0.0;
  none.max_nodes = 1u << 30;
  // A zero time limit trips on the first clock check, not before.
  const auto t = solve_exact(single_pop(1), none);
  CHECK(t.status == OracleStatus::kOptimal);
}

TEST_CASE("too many PoPs are rejected") {
  std::vector<std::vector<double>> m(65, std::vector<double>(65, 1.0));
  for (int i = 0; i < 65; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 0;
  const auto in = make_instance(m, {});
  CHECK_THROWS_AS(solve_exact(in), Error);
}

TEST_CASE("matches total enumeration on |P| <= 3") {
  int feasible = 0;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const int pops = 1 + static_cast<int>(seed % 3);
    const int vnfs = 1 + static_cast<int>(seed % 4);
    const auto in = tight_instance(pops, vnfs, seed);
    const auto expected = brute_force_optimum(in);
    const auto r = solve_exact(in);
    CAPTURE(seed);
    REQUIRE(r.status != OracleStatus::kBudgetExceeded);
    CHECK(r.objective == expected);
    CHECK((r.status == OracleStatus::kOptimal) == expected.has_value());
    if (r.solution) CHECK(check_feasibility(in, *r.solution).feasible());
    feasible += expected.has_value();
  }
  CHECK(feasible >= 15);
}

TEST_CASE("exact never loses to the two-step heuristic") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto in = tight_instance(4 + static_cast<int>(seed % 3), 6 + static_cast<int>(seed % 7), seed);
    const auto r = solve_exact(in);
    REQUIRE(r.status != OracleStatus::kBudgetExceeded);
    TspParams p;
    p.tabu.seed = seed;
    try {
      const auto s = two_step_place(in, p);
      REQUIRE(r.status == OracleStatus::kOptimal);
      CHECK(*r.objective <= objective_value(s));
    } catch (const Error&) {
      // heuristic may fail where the oracle succeeds; never the reverse
    }
    if (r.status == OracleStatus::kOptimal) {
      CHECK(check_feasibility(in, *r.solution).feasible());
      CHECK(*r.objective == objective_value(*r.solution));
      CHECK(*r.objective >= capacity_lower_bound(in));
    }
  }
}

TEST_CASE("step-restricted NFVO minimum") {
  const auto split = minimum_nfvo_plan(two_clusters(3));
  REQUIRE(split.status == OracleStatus::kOptimal);
  CHECK(split.plan->nfvo_count() == 2);
  CHECK(minimum_nfvo_plan(single_pop(4)).plan->nfvo_count() == 1);
  CHECK(minimum_nfvo_plan(single_pop(30)).status == OracleStatus::kInfeasible);
  // Never more NFVOs than the full optimum uses.
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto in = tight_instance(5, 8, seed);
    const auto full = solve_exact(in);
    const auto step = minimum_nfvo_plan(in);
    CHECK((full.status == OracleStatus::kOptimal) == (step.status == OracleStatus::kOptimal));
    if (full.solution && step.plan)
      CHECK(step.plan->nfvo_count() <= full.solution->nfvo_count());
  }
}

TEST_CASE("exact search is deterministic") {
  const auto in = tight_instance(5, 9, 12);
  const auto a = solve_exact(in);
  const auto b = solve_exact(in);
  CHECK(a.solution == b.solution);
  CHECK(a.nodes_explored == b.nodes_explored);
}
