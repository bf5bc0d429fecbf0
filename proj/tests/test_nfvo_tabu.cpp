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

#include <cmath>
#include <random>
#include <string>

#include "nfvplace/error.hpp"
#include "nfvplace/exact_oracle.hpp"
#include "nfvplace/nfvo_tabu.hpp"
#include "test_support.hpp"

using namespace nfvplace;
using namespace nfvplace::testing;

namespace {

TabuParams seeded(std::uint64_t seed) {
  TabuParams p;
  p.seed = seed;
  return p;
}

// Step-one predicates, evaluated independently of the penalty code.
bool step_one_feasible(const ProblemInstance& in, const DomainPlan& plan) {
  const int n = in.pop_count();
  const auto& prm = in.params();
  std::vector<int> load(static_cast<std::size_t>(n), 0);
  for (PopId q = 0; q < n; ++q) {
    const PopId h = plan.head_of[static_cast<std::size_t>(q)];
    if (h < 0 || h >= n || !plan.nfvo_at[static_cast<std::size_t>(h)]) return false;
    if (in.delay(h, q) > prm.nfvo_vim_delay_bound_ms) return false;
  }
  for (PopId p = 0; p < n; ++p) {
    if (!plan.nfvo_at[static_cast<std::size_t>(p)]) continue;
    if (plan.head_of[static_cast<std::size_t>(p)] != p) return false;
    if (in.delay(prm.gso_location, p) > prm.gso_nfvo_delay_bound_ms) return false;
  }
  for (const auto& v : in.vnfs()) {
    const PopId h = plan.head_of[static_cast<std::size_t>(v.location)];
    ++load[static_cast<std::size_t>(h)];
    bool host = false;
    for (PopId q = 0; q < n && !host; ++q)
      host = plan.head_of[static_cast<std::size_t>(q)] == h &&
             in.delay(v.location, q) <= v.vnfm_delay_bound_ms &&
             in.delay(q, h) <= v.nfvo_vnfm_delay_bound_ms;
    if (!host) return false;
  }
  for (int l : load)
    if (l > prm.nfvo_capacity) return false;
  return true;
}

}  // namespace

TEST_CASE("initial plan: one NFVO per PoP") {
  const auto one = single_pop(3);
  const auto p1 = initial_plan(one);
  CHECK(p1.nfvo_count() == 1);
  CHECK(p1.head_of == std::vector<PopId>{0});
  CHECK(penalty(one, p1) == 0);

  const auto eight = random_instance(8, 5, 3);
  const auto p8 = initial_plan(eight);
  CHECK(p8.nfvo_count() == 8);
  for (PopId p = 0; p < 8; ++p) CHECK(p8.head_of[static_cast<std::size_t>(p)] == p);
}

TEST_CASE("initial plan may violate the GSO bound") {
  ManoParameters prm;
  prm.gso_nfvo_delay_bound_ms = 50;
  const auto in = make_instance({{0, 10, 90}, {10, 0, 85}, {90, 85, 0}}, {}, prm);
  CHECK(penalty(in, initial_plan(in)) == 1);  // NFVO at PoP 2 is 90 ms from the GSO
}

TEST_CASE("penalty counts relaxed-constraint violations") {
  const auto in = two_clusters(2);
  DomainPlan good{{true, false, true, false}, {0, 0, 2, 2}};
  CHECK(penalty(in, good) == 0);
  DomainPlan merged{{true, false, false, false}, {0, 0, 0, 0}};
  CHECK(penalty(in, merged) >= 1);
  // PoPs 2 and 3 are 70 ms from the head (C13) and the VNFs on PoP 2 have no
  // reachable VNFM host in the domain.
  CHECK(penalty(in, merged) == 2 + 2);

  PenaltyWeights heavy;
  heavy.vim_delay = 10;
  CHECK(penalty(in, merged, heavy) == 20 + 2);

  DomainPlan broken{{true, false, true, false}, {0, 2, 3, 2}};  // PoP 2 headed by inactive 3
  CHECK(penalty(in, broken) >= 2);
}

TEST_CASE("penalty: self-PoP is always a VNFM host for its own head") {
  // omega smaller than any positive delay.
  const auto in = make_instance({{0, 10, 12}, {10, 0, 11}, {12, 11, 0}}, {2}, {}, {1, 45});
  DomainPlan own{{true, true, true}, {0, 1, 2}};
  CHECK(penalty(in, own) == 0);
  DomainPlan merged{{true, false, false}, {0, 0, 0}};
  CHECK(penalty(in, merged) == 0);  // VNF's own PoP 2 is in-domain, 12 ms <= 45 from head
  const auto tight = make_instance({{0, 10, 12}, {10, 0, 11}, {12, 11, 0}}, {2}, {}, {1, 5});
  CHECK(penalty(tight, merged) == 1);
  CHECK(penalty(tight, own) == 0);
}

TEST_CASE("penalty includes NFVO capacity") {
  ManoParameters prm;
  prm.nfvo_capacity = 3;
  const auto in = make_instance({{0, 5}, {5, 0}}, {0, 0, 1, 1}, prm);
  CHECK(penalty(in, DomainPlan{{true, false}, {0, 0}}) == 1);
  CHECK(penalty(in, DomainPlan{{true, true}, {0, 1}}) == 0);
}

TEST_CASE("moves") {
  const auto in = make_instance({{0, 4, 9}, {4, 0, 3}, {9, 3, 0}}, {});
  const auto all = initial_plan(in);

  SUBCASE("toggle off reassigns orphans to the nearest remaining NFVO") {
    const auto a = apply_move(in, all, {MoveKind::kToggleNfvo, 1, kNoHead});
    REQUIRE(a);
    CHECK(a->nfvo_count() == 2);
    CHECK(a->head_of == std::vector<PopId>{0, 2, 2});  // 3 ms to PoP 2 beats 4 ms to PoP 0
    const auto b = apply_move(in, all, {MoveKind::kToggleNfvo, 0, kNoHead});
    REQUIRE(b);
    CHECK(b->head_of == std::vector<PopId>{1, 1, 2});
  }
  SUBCASE("ties go to the lower PoP id") {
    const auto sym = make_instance({{0, 5, 5}, {5, 0, 5}, {5, 5, 0}}, {});
    const auto a = apply_move(sym, initial_plan(sym), {MoveKind::kToggleNfvo, 2, kNoHead});
    REQUIRE(a);
    CHECK(a->head_of == std::vector<PopId>{0, 1, 0});
  }
  SUBCASE("toggle on self-assigns") {
    DomainPlan one{{true, false, false}, {0, 0, 0}};
    const auto a = apply_move(in, one, {MoveKind::kToggleNfvo, 2, kNoHead});
    REQUIRE(a);
    CHECK(a->head_of == std::vector<PopId>{0, 0, 2});
    CHECK(a->nfvo_at == std::vector<bool>{true, false, true});
  }
  SUBCASE("discarded moves") {
    DomainPlan one{{true, false, false}, {0, 0, 0}};
    CHECK_FALSE(apply_move(in, one, {MoveKind::kToggleNfvo, 0, kNoHead}));
    CHECK_FALSE(apply_move(in, one, {MoveKind::kReassignPop, 1, 2}));  // inactive target
    CHECK_FALSE(apply_move(in, one, {MoveKind::kReassignPop, 1, 0}));  // current head
    CHECK_FALSE(apply_move(in, one, {MoveKind::kReassignPop, 7, 0}));
  }
  SUBCASE("reassign") {
    const auto a = apply_move(in, all, {MoveKind::kReassignPop, 1, 0});
    REQUIRE(a);
    CHECK(a->head_of == std::vector<PopId>{0, 0, 2});
    CHECK(a->nfvo_at == all.nfvo_at);  // PoP 1 keeps its NFVO, breaking C4
    CHECK(penalty(in, *a) > 0);
  }
}

TEST_CASE("single PoP has an empty neighborhood") {
  const auto in = single_pop(2);
  const auto params = resolve_tabu_params({}, 1);
  auto state = make_initial_state(in, params);
  std::mt19937_64 rng(1);
  CHECK(propose_moves(in, state, params, rng).empty());
  const auto result = run_tabu_search(in, params);
  CHECK(result.best.nfvo_count() == 1);
  CHECK(result.iterations == params.stop_patience);
}

TEST_CASE("both move kinds are sampled with equal probability") {
  const auto in = random_instance(8, 10, 21);
  TabuParams params = resolve_tabu_params({}, 8);
  params.neighborhood_samples = 100;
  const auto state = make_initial_state(in, params);
  std::mt19937_64 rng(77);
  int toggles = 0, total = 0;
  while (total < 10000) {
    for (const auto& c : propose_moves(in, state, params, rng)) {
      if (total == 10000) break;
      toggles += c.move.kind == MoveKind::kToggleNfvo;
      ++total;
    }
  }
  const double freq = static_cast<double>(toggles) / total;
  CHECK(freq == doctest::Approx(0.5).epsilon(0.04));  // 0.5 +/- 0.02
  CHECK(std::abs(freq - 0.5) <= 0.02);
}

TEST_CASE("tabu memory and aspiration") {
  const auto in = random_instance(6, 6, 8);
  TabuParams params = resolve_tabu_params({}, 6);
  params.tabu_tenure = 3;
  auto state = make_initial_state(in, params);
  std::mt19937_64 rng(5);
  const DomainPlan before = state.current;
  tabu_step(in, state, params, rng);
  // Find which move was taken and check its reverse is now tabu.
  int changed = 0;
  for (PopId p = 0; p < 6; ++p)
    changed += before.nfvo_at[static_cast<std::size_t>(p)] != state.current.nfvo_at[static_cast<std::size_t>(p)];
  REQUIRE(changed == 1);  // first moves from the all-active start are toggles
  PopId toggled = 0;
  for (PopId p = 0; p < 6; ++p)
    if (before.nfvo_at[static_cast<std::size_t>(p)] != state.current.nfvo_at[static_cast<std::size_t>(p)]) toggled = p;
  const Move back{MoveKind::kToggleNfvo, toggled, kNoHead};
  CHECK(state.tabu_until.at(attribute_of(back)) == 1 + 3);
  for (int it = 2; it <= 4; ++it) {
    state.iteration = it;
    CHECK(state.is_tabu(back));
  }
  state.iteration = 5;
  CHECK_FALSE(state.is_tabu(back));

  // A tabu move survives the filter only when it beats the best score.
  state.iteration = 2;
  state.best_score = {1000, 1000};
  params.neighborhood_samples = 400;
  bool seen = false;
  for (const auto& c : propose_moves(in, state, params, rng))
    seen = seen || c.move == back;
  CHECK(seen);
  state.best_score = {0, 0};
  for (const auto& c : propose_moves(in, state, params, rng)) CHECK_FALSE(c.move == back);
}

TEST_CASE("place_nfvos on forced layouts") {
  CHECK(place_nfvos(single_pop(7), seeded(1)).head_of == std::vector<PopId>{0});
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto plan = place_nfvos(two_clusters(4), seeded(seed));
    CHECK(plan.nfvo_count() == 2);
    CHECK(plan.head_of[0] == plan.head_of[1]);
    CHECK(plan.head_of[2] == plan.head_of[3]);
    CHECK(plan.head_of[0] != plan.head_of[2]);
  }
}

TEST_CASE("place_nfvos reports infeasibility") {
  try {
    place_nfvos(single_pop(25), seeded(1));
    FAIL("expected NoFeasiblePlan");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNoFeasiblePlan);
    CHECK(std::string(e.what()).find("penalty 1") != std::string::npos);
  }
}

TEST_CASE("search invariants over random instances") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const int pops = 2 + static_cast<int>(seed % 9);
    const auto in = random_instance(pops, static_cast<int>(seed % 25), seed, 3000.0);
    const auto params = seeded(seed * 7);
    const auto r = run_tabu_search(in, params);
    const auto resolved = resolve_tabu_params(params, pops);
    CAPTURE(seed);
    // Stop rule: exactly `stop_patience` iterations after the last improvement.
    CHECK(r.iterations == r.last_improvement + resolved.stop_patience);
    CHECK(r.iterations >= 1);
    CHECK(static_cast<int>(r.best_trace.size()) == r.iterations);
    for (std::size_t i = 1; i < r.best_trace.size(); ++i)
      CHECK_FALSE(r.best_trace[i - 1] < r.best_trace[i]);
    CHECK(r.best_trace.back() == r.best_score);
    CHECK(score(in, r.best) == r.best_score);
    CHECK((r.best_score.penalty == 0) == step_one_feasible(in, r.best));
    if (r.best_score.penalty == 0) CHECK(place_nfvos(in, params) == r.best);
    // Same seed, same run.
    const auto again = run_tabu_search(in, params);
    CHECK(again.best == r.best);
    CHECK(again.best_trace == r.best_trace);
  }
}

TEST_CASE("custom stop patience is honoured") {
  const auto in = random_instance(7, 12, 3);
  for (int patience : {1, 5, 13, 40}) {
    TabuParams p = seeded(9);
    p.stop_patience = patience;
    const auto r = run_tabu_search(in, p);
    CHECK(r.iterations - r.last_improvement == patience);
  }
}

TEST_CASE("invalid parameters are rejected") {
  TabuParams p;
  p.tabu_tenure = -1;
  CHECK_THROWS_AS(resolve_tabu_params(p, 4), Error);
  const auto d = resolve_tabu_params({}, 7);
  CHECK(d.stop_patience == 28);
  CHECK(d.tabu_tenure == 4);
  CHECK(d.neighborhood_samples == 10);
  CHECK(resolve_tabu_params({}, 16).neighborhood_samples == 16);
}

TEST_CASE("NFVO count matches the step-restricted optimum") {
  int matches = 0, compared = 0;
  for (std::uint64_t seed = 1; compared < 50; ++seed) {
    const auto in = random_instance(5, 6 + static_cast<int>(seed % 7), 1000 + seed, 3500.0);
    const auto oracle = minimum_nfvo_plan(in);
    REQUIRE(oracle.status != OracleStatus::kBudgetExceeded);
    if (oracle.status != OracleStatus::kOptimal) continue;
    ++compared;
    TabuResult details;
    try {
      const auto plan = place_nfvos(in, seeded(seed), &details);
      CHECK(plan.nfvo_count() >= oracle.plan->nfvo_count());
      matches += plan.nfvo_count() == oracle.plan->nfvo_count();
    } catch (const Error&) {
      // counts as a miss
    }
  }
  MESSAGE("matched " << matches << " of 50");
  CHECK(matches >= 45);
}
