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

#include "nfvplace/exact_oracle.hpp"

#include <chrono>
#include <climits>
#include <functional>
#include <map>
#include <numeric>
#include <utility>

#include "nfvplace/error.hpp"
#include "nfvplace/nfvo_tabu.hpp"
#include "nfvplace/vnfm_place.hpp"

namespace nfvplace {

std::string to_string(OracleStatus status) {
  switch (status) {
    case OracleStatus::kOptimal: return "optimal";
    case OracleStatus::kInfeasible: return "infeasible";
    case OracleStatus::kBudgetExceeded: return "budget_exceeded";
  }
  return "unknown";
}

namespace {

// Visits every plan with a given NFVO set that satisfies the step-one
// constraints. Stops early once the budget is spent or the visitor says so.
class PlanEnumerator {
 public:
  using Visitor = std::function<bool(const DomainPlan&)>;  // false = stop

  PlanEnumerator(const ProblemInstance& instance, const OracleBudget& budget)
      : instance_(instance),
        budget_(budget),
        start_(std::chrono::steady_clock::now()),
        vnfs_at_(static_cast<std::size_t>(instance.pop_count()), 0) {
    if (instance.pop_count() > 64)
      throw Error(ErrorCode::kInvalidArgument, "exact solver supports at most 64 PoPs");
    for (const auto& v : instance.vnfs()) ++vnfs_at_[static_cast<std::size_t>(v.location)];
  }

  bool out_of_budget() const noexcept { return out_of_budget_; }
  std::uint64_t nodes() const noexcept { return nodes_; }

  // Returns false if enumeration was cut short.
  bool enumerate(const std::vector<PopId>& heads, const Visitor& visit) {
    const int n = instance_.pop_count();
    const auto& prm = instance_.params();
    plan_.nfvo_at.assign(static_cast<std::size_t>(n), false);
    plan_.head_of.assign(static_cast<std::size_t>(n), kNoHead);
    for (PopId h : heads) {
      if (instance_.delay(prm.gso_location, h) > prm.gso_nfvo_delay_bound_ms) return true;
      plan_.nfvo_at[static_cast<std::size_t>(h)] = true;
    }
    options_.assign(static_cast<std::size_t>(n), {});
    for (PopId q = 0; q < n; ++q) {
      auto& opt = options_[static_cast<std::size_t>(q)];
      if (plan_.nfvo_at[static_cast<std::size_t>(q)]) {
        opt.push_back(q);
      } else {
        for (PopId h : heads)
          if (instance_.delay(h, q) <= prm.nfvo_vim_delay_bound_ms) opt.push_back(h);
      }
      if (opt.empty()) return true;
    }
    load_.assign(static_cast<std::size_t>(n), 0);
    visit_ = &visit;
    return descend(0);
  }

 private:
  bool tick() {
    ++nodes_;
    if (nodes_ >= budget_.max_nodes) out_of_budget_ = true;
    if ((nodes_ & 0xfff) == 0) {
      const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start_;
      if (dt.count() > budget_.time_limit_s) out_of_budget_ = true;
    }
    return !out_of_budget_;
  }

  bool descend(PopId q) {
    if (!tick()) return false;
    const int n = instance_.pop_count();
    if (q == n) {
      for (VnfId v = 0; v < instance_.vnf_count(); ++v)
        if (!has_vnfm_host(instance_, plan_, v)) return true;
      return (*visit_)(plan_);
    }
    const int cap = instance_.params().nfvo_capacity;
    const int here = vnfs_at_[static_cast<std::size_t>(q)];
    for (PopId h : options_[static_cast<std::size_t>(q)]) {
      auto& load = load_[static_cast<std::size_t>(h)];
      if (load + here > cap) continue;
      load += here;
      plan_.head_of[static_cast<std::size_t>(q)] = h;
      const bool go_on = descend(q + 1);
      load -= here;
      if (!go_on) return false;
    }
    plan_.head_of[static_cast<std::size_t>(q)] = kNoHead;
    return true;
  }

  const ProblemInstance& instance_;
  OracleBudget budget_;
  std::chrono::steady_clock::time_point start_;
  std::vector<int> vnfs_at_;
  DomainPlan plan_;
  std::vector<std::vector<PopId>> options_;
  std::vector<int> load_;
  const Visitor* visit_ = nullptr;
  std::uint64_t nodes_ = 0;
  bool out_of_budget_ = false;
};

// Calls f(subset) for each k-subset of 0..n-1 in lexicographic order; stops
// when f returns false.
bool for_each_subset(int n, int k, const std::function<bool(const std::vector<PopId>&)>& f) {
  std::vector<PopId> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    if (!f(idx)) return false;
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return true;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

std::uint64_t member_mask(const std::vector<PopId>& members) {
  std::uint64_t m = 0;
  for (PopId p : members) m |= std::uint64_t{1} << p;
  return m;
}

}  // namespace

OracleResult solve_exact(const ProblemInstance& instance, const OracleBudget& budget) {
  PlanEnumerator plans(instance, budget);
  const int n = instance.pop_count();
  const int phi = instance.params().vnfm_capacity;
  const int vnfm_floor = (instance.vnf_count() + phi - 1) / phi;

  int best = INT_MAX;
  Solution incumbent;
  std::map<std::pair<PopId, std::uint64_t>, std::vector<VnfmAssignment>> memo;
  VnfmPlacementOptions exact;
  exact.mode = PlacementMode::kExact;

  for (int k = 1; k <= n && k + vnfm_floor < best; ++k) {
    const bool complete = for_each_subset(n, k, [&](const std::vector<PopId>& heads) {
      if (k + vnfm_floor >= best) return true;
      return plans.enumerate(heads, [&](const DomainPlan& plan) {
        const auto domains = domains_of(instance, plan);
        int bound = k;
        for (const auto& d : domains)
          bound += (static_cast<int>(d.vnfs.size()) + phi - 1) / phi;
        if (bound >= best) return true;
        int total = k;
        std::vector<const std::vector<VnfmAssignment>*> parts;
        for (const auto& d : domains) {
          const auto key = std::make_pair(d.head, member_mask(d.member_pops));
          auto it = memo.find(key);
          if (it == memo.end()) it = memo.emplace(key, place_domain(instance, d, exact)).first;
          total += static_cast<int>(it->second.size());
          if (total >= best) return true;
          parts.push_back(&it->second);
        }
        best = total;
        incumbent.plan = plan;
        incumbent.vnfms.clear();
        for (const auto* part : parts)
          incumbent.vnfms.insert(incumbent.vnfms.end(), part->begin(), part->end());
        return true;
      });
    });
    if (!complete) break;
  }

  OracleResult result;
  result.nodes_explored = plans.nodes();
  if (best != INT_MAX) {
    result.solution = incumbent;
    result.objective = best;
  }
  if (plans.out_of_budget())
    result.status = OracleStatus::kBudgetExceeded;
  else
    result.status = best != INT_MAX ? OracleStatus::kOptimal : OracleStatus::kInfeasible;
  return result;
}

NfvoOracleResult minimum_nfvo_plan(const ProblemInstance& instance, const OracleBudget& budget) {
  PlanEnumerator plans(instance, budget);
  NfvoOracleResult result;
  const int n = instance.pop_count();
  for (int k = 1; k <= n && !result.plan; ++k) {
    const bool complete = for_each_subset(n, k, [&](const std::vector<PopId>& heads) {
      return plans.enumerate(heads, [&](const DomainPlan& plan) {
        result.plan = plan;
        return false;
      }) && !result.plan;
    });
    if (!complete && plans.out_of_budget()) break;
  }
  result.nodes_explored = plans.nodes();
  if (result.plan)
    result.status = OracleStatus::kOptimal;
  else
    result.status = plans.out_of_budget() ? OracleStatus::kBudgetExceeded
                                          : OracleStatus::kInfeasible;
  return result;
}

}  // namespace nfvplace
