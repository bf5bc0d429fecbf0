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

// NFVO placement by tabu search: decides which PoPs host an NFVO and which
// domain every PoP belongs to.
//
// The search starts from one NFVO per PoP and moves by toggling an NFVO or
// by reassigning a PoP to another active NFVO. Domain-structure, GSO/VIM
// delay, NFVO capacity and VNFM-reachability constraints are relaxed into a
// penalty; plans are compared lexicographically on (penalty, NFVO count).
// Each iteration takes the best neighbor if it beats the best-found score,
// otherwise the neighbor with the fewest NFVOs, letting the walk cross into
// infeasible territory. The run stops after `stop_patience` consecutive
// iterations without a strict improvement of the best-found score.

#ifndef NFVPLACE_NFVO_TABU_HPP
#define NFVPLACE_NFVO_TABU_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "nfvplace/ilp_model.hpp"
#include "nfvplace/topology.hpp"

namespace nfvplace {

/// Per-instance weights of the relaxed constraint families.
struct PenaltyWeights {
  int domain_structure = 1;   // C2, C3, C4
  int gso_delay = 1;          // C12
  int vim_delay = 1;          // C13
  int nfvo_capacity = 1;      // C9, per overloaded domain
  int vnfm_reachability = 1;  // per VNF without a usable VNFM host
};

/// Zero means "derive from the instance": patience 4|P|, tenure ceil(|P|/2),
/// max(10, |P|) sampled neighbors per iteration.
struct TabuParams {
  int stop_patience = 0;
  int tabu_tenure = 0;
  int neighborhood_samples = 0;
  std::uint64_t seed = 1;
  PenaltyWeights weights;
};

TabuParams resolve_tabu_params(TabuParams params, int pop_count);

enum class MoveKind { kToggleNfvo, kReassignPop };

struct Move {
  MoveKind kind = MoveKind::kToggleNfvo;
  PopId pop = 0;
  PopId new_head = kNoHead;  // ReassignPop only

  bool operator==(const Move&) const = default;
};

struct Score {
  int penalty = 0;
  int nfvo_count = 0;

  auto operator<=>(const Score&) const = default;
};

struct Candidate {
  Move move;
  DomainPlan plan;
  Score score;
};

/// One NFVO at every PoP, each PoP its own domain.
DomainPlan initial_plan(const ProblemInstance& instance);

/// True when some PoP of v's domain can host v's VNFM within both
/// the VNF-VNFM and NFVO-VNFM bounds.
bool has_vnfm_host(const ProblemInstance& instance, const DomainPlan& plan, VnfId v);

/// Weighted count of violated relaxed-constraint instances.
int penalty(const ProblemInstance& instance, const DomainPlan& plan,
            const PenaltyWeights& weights = {});

Score score(const ProblemInstance& instance, const DomainPlan& plan,
            const PenaltyWeights& weights = {});

/// The plan after `move`, or nothing when the move is not applicable
/// (deactivating the last NFVO, reassigning to an inactive or current head).
/// Orphans of a deactivated NFVO go to the nearest remaining one.
std::optional<DomainPlan> apply_move(const ProblemInstance& instance,
                                     const DomainPlan& plan, const Move& move);

struct TabuAttribute {
  MoveKind kind;
  PopId a;
  PopId b;

  auto operator<=>(const TabuAttribute&) const = default;
};

TabuAttribute attribute_of(const Move& move);

struct TabuState {
  DomainPlan current;
  Score current_score;
  DomainPlan best;
  Score best_score;
  std::map<TabuAttribute, int> tabu_until;  // attribute -> last tabu iteration
  int iteration = 0;
  int since_improvement = 0;
  int last_improvement = 0;

  bool is_tabu(const Move& move) const;
};

TabuState make_initial_state(const ProblemInstance& instance, const TabuParams& params);

/// Samples the neighborhood of `state.current`. Tabu moves are dropped unless
/// they beat the best-found score.
std::vector<Candidate> propose_moves(const ProblemInstance& instance, const TabuState& state,
                                     const TabuParams& params, std::mt19937_64& rng);

/// Runs one iteration; returns true if the best-found score improved.
bool tabu_step(const ProblemInstance& instance, TabuState& state, const TabuParams& params,
               std::mt19937_64& rng);

struct TabuResult {
  DomainPlan best;
  Score best_score;
  int iterations = 0;
  int last_improvement = 0;
  std::vector<Score> best_trace;  // best-found score after each iteration
};

/// Full search; the result may still carry a positive penalty.
TabuResult run_tabu_search(const ProblemInstance& instance, const TabuParams& params);

/// Step one of the two-step placement. Throws Error(kNoFeasiblePlan) when no
/// zero-penalty plan was found.
DomainPlan place_nfvos(const ProblemInstance& instance, const TabuParams& params,
                       TabuResult* details = nullptr);

}  // namespace nfvplace

#endif  // NFVPLACE_NFVO_TABU_HPP
