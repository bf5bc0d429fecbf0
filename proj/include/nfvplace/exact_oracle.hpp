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

// Exact solver for small instances. Enumerates NFVO sets by increasing size
// and every delay-legal PoP-to-head assignment, then solves each domain's
// VNFM placement exactly. The bound |S| + ceil(|V| / vnfm_capacity) proves
// optimality once it reaches the incumbent.

#ifndef NFVPLACE_EXACT_ORACLE_HPP
#define NFVPLACE_EXACT_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "nfvplace/ilp_model.hpp"
#include "nfvplace/topology.hpp"

namespace nfvplace {

struct OracleBudget {
  std::uint64_t max_nodes = 100'000'000;
  double time_limit_s = 600.0;
};

enum class OracleStatus { kOptimal, kInfeasible, kBudgetExceeded };

std::string to_string(OracleStatus status);

struct OracleResult {
  OracleStatus status = OracleStatus::kInfeasible;
  /// Optimal solution, or the incumbent when the budget ran out.
  std::optional<Solution> solution;
  std::optional<int> objective;
  std::uint64_t nodes_explored = 0;
};

/// Instances above 64 PoPs are rejected with Error(kInvalidArgument).
OracleResult solve_exact(const ProblemInstance& instance, const OracleBudget& budget = {});

struct NfvoOracleResult {
  OracleStatus status = OracleStatus::kInfeasible;
  std::optional<DomainPlan> plan;
  std::uint64_t nodes_explored = 0;
};

/// Fewest NFVOs over plans meeting the step-one constraints (domain
/// structure, GSO and VIM delays, NFVO capacity, VNFM reachability).
NfvoOracleResult minimum_nfvo_plan(const ProblemInstance& instance,
                                   const OracleBudget& budget = {});

}  // namespace nfvplace

#endif  // NFVPLACE_EXACT_ORACLE_HPP
