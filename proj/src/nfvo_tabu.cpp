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

#include "nfvplace/nfvo_tabu.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "nfvplace/error.hpp"

namespace nfvplace {

TabuParams resolve_tabu_params(TabuParams params, int pop_count) {
  if (params.stop_patience < 0 || params.tabu_tenure < 0 || params.neighborhood_samples < 0)
    throw Error(ErrorCode::kInvalidArgument, "tabu parameters must be positive");
  if (params.stop_patience == 0) params.stop_patience = 4 * pop_count;
  if (params.tabu_tenure == 0) params.tabu_tenure = (pop_count + 1) / 2;
  if (params.neighborhood_samples == 0) params.neighborhood_samples = std::max(10, pop_count);
  return params;
}

DomainPlan initial_plan(const ProblemInstance& instance) {
  const auto n = static_cast<std::size_t>(instance.pop_count());
  DomainPlan plan{std::vector<bool>(n, true), std::vector<PopId>(n)};
  for (std::size_t p = 0; p < n; ++p) plan.head_of[p] = static_cast<PopId>(p);
  return plan;
}

bool has_vnfm_host(const ProblemInstance& instance, const DomainPlan& plan, VnfId v) {
  const auto& vnf = instance.vnf(v);
  const PopId head = plan.head_of[static_cast<std::size_t>(vnf.location)];
  if (head == kNoHead) return false;
  for (PopId host = 0; host < plan.pop_count(); ++host) {
    if (plan.head_of[static_cast<std::size_t>(host)] != head) continue;
    if (instance.delay(vnf.location, host) <= vnf.vnfm_delay_bound_ms &&
        instance.delay(host, head) <= vnf.nfvo_vnfm_delay_bound_ms)
      return true;
  }
  return false;
}

int penalty(const ProblemInstance& instance, const DomainPlan& plan,
            const PenaltyWeights& w) {
  const int n = instance.pop_count();
  const auto& prm = instance.params();
  auto head = [&plan](PopId q) { return plan.head_of[static_cast<std::size_t>(q)]; };
  auto active = [&plan](PopId p) {
    return static_cast<bool>(plan.nfvo_at[static_cast<std::size_t>(p)]);
  };
  int total = 0;
  std::vector<int> load(static_cast<std::size_t>(n), 0);
  for (const auto& v : instance.vnfs()) {
    const PopId h = head(v.location);
    if (h != kNoHead) ++load[static_cast<std::size_t>(h)];
  }
  for (PopId q = 0; q < n; ++q) {
    const PopId h = head(q);
    if (h == kNoHead) {
      total += w.domain_structure;
      continue;
    }
    if (!active(h)) total += w.domain_structure;
    if (instance.delay(h, q) > prm.nfvo_vim_delay_bound_ms) total += w.vim_delay;
  }
  for (PopId p = 0; p < n; ++p) {
    if (!active(p)) continue;
    if (head(p) != p) total += w.domain_structure;
    if (instance.delay(prm.gso_location, p) > prm.gso_nfvo_delay_bound_ms)
      total += w.gso_delay;
    if (load[static_cast<std::size_t>(p)] > prm.nfvo_capacity) total += w.nfvo_capacity;
  }
  for (VnfId v = 0; v < instance.vnf_count(); ++v)
    if (!has_vnfm_host(instance, plan, v)) total += w.vnfm_reachability;
  return total;
}

Score score(const ProblemInstance& instance, const DomainPlan& plan,
            const PenaltyWeights& weights) {
  return {penalty(instance, plan, weights), plan.nfvo_count()};
}

std::optional<DomainPlan> apply_move(const ProblemInstance& instance,
                                     const DomainPlan& plan, const Move& move) {
  const int n = plan.pop_count();
  if (move.pop < 0 || move.pop >= n) return std::nullopt;
  const auto idx = static_cast<std::size_t>(move.pop);
  DomainPlan next = plan;

  if (move.kind == MoveKind::kReassignPop) {
    if (move.new_head < 0 || move.new_head >= n) return std::nullopt;
    if (!plan.nfvo_at[static_cast<std::size_t>(move.new_head)]) return std::nullopt;
    if (plan.head_of[idx] == move.new_head) return std::nullopt;
    next.head_of[idx] = move.new_head;
    return next;
  }

  if (!plan.nfvo_at[idx]) {
    next.nfvo_at[idx] = true;
    next.head_of[idx] = move.pop;
    return next;
  }
  next.nfvo_at[idx] = false;
  const auto remaining = next.heads();
  if (remaining.empty()) return std::nullopt;
  for (PopId q = 0; q < n; ++q) {
    if (plan.head_of[static_cast<std::size_t>(q)] != move.pop) continue;
    PopId nearest = remaining.front();
    for (PopId r : remaining)
      if (instance.delay(q, r) < instance.delay(q, nearest)) nearest = r;
    next.head_of[static_cast<std::size_t>(q)] = nearest;
  }
  return next;
}

TabuAttribute attribute_of(const Move& move) {
  if (move.kind == MoveKind::kToggleNfvo) return {move.kind, move.pop, kNoHead};
  return {move.kind, move.pop, move.new_head};
}

bool TabuState::is_tabu(const Move& move) const {
  auto it = tabu_until.find(attribute_of(move));
  return it != tabu_until.end() && it->second >= iteration;
}

TabuState make_initial_state(const ProblemInstance& instance, const TabuParams& params) {
  TabuState state;
  state.current = initial_plan(instance);
  state.current_score = score(instance, state.current, params.weights);
  state.best = state.current;
  state.best_score = state.current_score;
  return state;
}

std::vector<Candidate> propose_moves(const ProblemInstance& instance, const TabuState& state,
                                     const TabuParams& params, std::mt19937_64& rng) {
  const int n = instance.pop_count();
  std::bernoulli_distribution toggle_kind(0.5);
  std::uniform_int_distribution<PopId> any_pop(0, n - 1);
  const auto heads = state.current.heads();
  std::vector<Candidate> out;
  for (int i = 0; i < params.neighborhood_samples; ++i) {
    Move move;
    if (toggle_kind(rng)) {
      move = {MoveKind::kToggleNfvo, any_pop(rng), kNoHead};
    } else {
      const PopId q = any_pop(rng);
      const PopId current_head = state.current.head_of[static_cast<std::size_t>(q)];
      std::vector<PopId> targets;
      for (PopId h : heads)
        if (h != current_head) targets.push_back(h);
      if (targets.empty()) continue;
      std::uniform_int_distribution<std::size_t> pick(0, targets.size() - 1);
      move = {MoveKind::kReassignPop, q, targets[pick(rng)]};
    }
    auto plan = apply_move(instance, state.current, move);
    if (!plan) continue;
    const Score s = score(instance, *plan, params.weights);
    if (state.is_tabu(move) && !(s < state.best_score)) continue;
    out.push_back({move, std::move(*plan), s});
  }
  return out;
}

namespace {

const Candidate& pick_uniform(const std::vector<const Candidate*>& tied, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, tied.size() - 1);
  return *tied[pick(rng)];
}

Move reverse_of(const Move& applied, const DomainPlan& before) {
  if (applied.kind == MoveKind::kToggleNfvo) return applied;
  return {MoveKind::kReassignPop, applied.pop,
          before.head_of[static_cast<std::size_t>(applied.pop)]};
}

}  // namespace

bool tabu_step(const ProblemInstance& instance, TabuState& state, const TabuParams& params,
               std::mt19937_64& rng) {
  ++state.iteration;
  const auto candidates = propose_moves(instance, state, params, rng);
  bool improved = false;
  if (!candidates.empty()) {
    Score best_neighbor = candidates.front().score;
    int fewest_nfvos = std::numeric_limits<int>::max();
    for (const auto& c : candidates) {
      best_neighbor = std::min(best_neighbor, c.score);
      fewest_nfvos = std::min(fewest_nfvos, c.score.nfvo_count);
    }
    std::vector<const Candidate*> tied;
    if (best_neighbor < state.best_score) {
      for (const auto& c : candidates)
        if (c.score == best_neighbor) tied.push_back(&c);
    } else {
      // Oscillation: go for the fewest NFVOs even if the penalty rises;
      // among those, the lowest penalty.
      int lowest = std::numeric_limits<int>::max();
      for (const auto& c : candidates)
        if (c.score.nfvo_count == fewest_nfvos) lowest = std::min(lowest, c.score.penalty);
      for (const auto& c : candidates)
        if (c.score.nfvo_count == fewest_nfvos && c.score.penalty == lowest)
          tied.push_back(&c);
    }
    const Candidate& chosen = pick_uniform(tied, rng);
    const Move reverse = reverse_of(chosen.move, state.current);
    if (reverse.kind == MoveKind::kToggleNfvo || reverse.new_head != kNoHead)
      state.tabu_until[attribute_of(reverse)] = state.iteration + params.tabu_tenure;
    state.current = chosen.plan;
    state.current_score = chosen.score;
    if (chosen.score < state.best_score) {
      state.best = chosen.plan;
      state.best_score = chosen.score;
      improved = true;
    }
  }
  if (improved) {
    state.since_improvement = 0;
    state.last_improvement = state.iteration;
  } else {
    ++state.since_improvement;
  }
  return improved;
}

TabuResult run_tabu_search(const ProblemInstance& instance, const TabuParams& raw) {
  const TabuParams params = resolve_tabu_params(raw, instance.pop_count());
  std::mt19937_64 rng(params.seed);
  TabuState state = make_initial_state(instance, params);
  TabuResult result;
  while (state.since_improvement < params.stop_patience) {
    tabu_step(instance, state, params, rng);
    result.best_trace.push_back(state.best_score);
  }
  result.best = state.best;
  result.best_score = state.best_score;
  result.iterations = state.iteration;
  result.last_improvement = state.last_improvement;
  return result;
}

DomainPlan place_nfvos(const ProblemInstance& instance, const TabuParams& params,
                       TabuResult* details) {
  TabuResult result = run_tabu_search(instance, params);
  if (result.best_score.penalty > 0) {
    std::ostringstream os;
    os << "tabu search found no feasible NFVO plan (best penalty "
       << result.best_score.penalty << " with " << result.best_score.nfvo_count
       << " NFVOs after " << result.iterations << " iterations)";
    if (details) *details = std::move(result);
    throw Error(ErrorCode::kNoFeasiblePlan, os.str());
  }
  DomainPlan plan = result.best;
  if (details) *details = std::move(result);
  return plan;
}

}  // namespace nfvplace
