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

// VNFM placement inside one domain, and the two-step pipeline that runs the
// NFVO tabu search followed by per-domain VNFM placement.
//
// Inside a domain the problem is a capacitated set cover: a VNFM opened at a
// member PoP can manage any VNF for which that PoP is an eligible host, up
// to vnfm_capacity of them. Several VNFMs may share a PoP.

#ifndef NFVPLACE_VNFM_PLACE_HPP
#define NFVPLACE_VNFM_PLACE_HPP

#include <vector>

#include "nfvplace/ilp_model.hpp"
#include "nfvplace/nfvo_tabu.hpp"
#include "nfvplace/topology.hpp"

namespace nfvplace {

struct DomainView {
  PopId head = 0;
  std::vector<PopId> member_pops;  // increasing, contains head
  std::vector<VnfId> vnfs;         // located on member PoPs, increasing
};

/// One view per active NFVO, in head order.
std::vector<DomainView> domains_of(const ProblemInstance& instance, const DomainPlan& plan);

/// Member PoPs within v's VNFM bound of v and within v's NFVO-VNFM bound of
/// the head.
std::vector<PopId> eligible_hosts(const ProblemInstance& instance, const DomainView& domain,
                                  VnfId v);

enum class PlacementMode { kAuto, kExact, kGreedy };

struct VnfmPlacementOptions {
  /// kAuto solves domains with at most this many VNFs exactly.
  int exact_threshold = 20;
  PlacementMode mode = PlacementMode::kAuto;
};

/// Largest domain the exact solver accepts.
inline constexpr int kMaxExactDomainVnfs = 64;

/// VNFMs for one domain, sorted by (location, first managed VNF); managed
/// lists are sorted. Throws Error(kInfeasibleDomain) if a VNF has no
/// eligible host.
std::vector<VnfmAssignment> place_domain(const ProblemInstance& instance,
                                         const DomainView& domain,
                                         const VnfmPlacementOptions& options = {});

/// Minimum-count placement. Throws Error(kInvalidArgument) above
/// kMaxExactDomainVnfs VNFs.
std::vector<VnfmAssignment> place_domain_exact(const ProblemInstance& instance,
                                               const DomainView& domain);

/// Largest-coverage-first greedy.
std::vector<VnfmAssignment> place_domain_greedy(const ProblemInstance& instance,
                                                const DomainView& domain);

struct TspParams {
  TabuParams tabu;
  VnfmPlacementOptions vnfm;
};

struct TspStats {
  int iterations = 0;
  int last_improvement = 0;
};

/// Two-step placement: NFVO tabu search, then VNFM placement per domain.
/// Propagates Error(kNoFeasiblePlan) and Error(kInfeasibleDomain).
Solution two_step_place(const ProblemInstance& instance, const TspParams& params,
                        TspStats* stats = nullptr);

}  // namespace nfvplace

#endif  // NFVPLACE_VNFM_PLACE_HPP
