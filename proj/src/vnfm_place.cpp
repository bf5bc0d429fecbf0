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

#include "nfvplace/vnfm_place.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <tuple>

#include "nfvplace/error.hpp"

namespace nfvplace {

std::vector<DomainView> domains_of(const ProblemInstance& instance, const DomainPlan& plan) {
  std::vector<DomainView> out;
  for (PopId head : plan.heads()) {
    DomainView d;
    d.head = head;
    d.member_pops = plan.members(head);
    for (const auto& v : instance.vnfs())
      if (plan.head_of[static_cast<std::size_t>(v.location)] == head) d.vnfs.push_back(v.id);
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<PopId> eligible_hosts(const ProblemInstance& instance, const DomainView& domain,
                                  VnfId v) {
  const auto& vnf = instance.vnf(v);
  std::vector<PopId> out;
  for (PopId host : domain.member_pops) {
    if (instance.delay(vnf.location, host) <= vnf.vnfm_delay_bound_ms &&
        instance.delay(host, domain.head) <= vnf.nfvo_vnfm_delay_bound_ms)
      out.push_back(host);
  }
  return out;
}

namespace {

// Local view of a domain: VNFs are numbered 0..n-1 in domain.vnfs order.
struct DomainProblem {
  int capacity = 1;
  std::vector<VnfId> vnfs;
  std::vector<std::vector<PopId>> eligible;     // per local VNF
  std::vector<PopId> hosts;                     // member PoPs covering something
  std::vector<std::vector<int>> covered;        // per host, local VNFs
};

// Hosts ordered by (delay to head, id).
DomainProblem build_problem(const ProblemInstance& instance, const DomainView& domain) {
  DomainProblem dp;
  dp.capacity = instance.params().vnfm_capacity;
  dp.vnfs = domain.vnfs;
  for (VnfId v : domain.vnfs) {
    auto hosts = eligible_hosts(instance, domain, v);
    if (hosts.empty())
      throw Error(ErrorCode::kInfeasibleDomain,
                  "VNF " + std::to_string(v) + " has no eligible VNFM host in the domain of PoP " +
                      std::to_string(domain.head));
    dp.eligible.push_back(std::move(hosts));
  }
  std::vector<PopId> members = domain.member_pops;
  std::sort(members.begin(), members.end(), [&](PopId a, PopId b) {
    return std::make_tuple(instance.delay(a, domain.head), a) <
           std::make_tuple(instance.delay(b, domain.head), b);
  });
  for (PopId h : members) {
    std::vector<int> cov;
    for (std::size_t i = 0; i < dp.eligible.size(); ++i)
      if (std::find(dp.eligible[i].begin(), dp.eligible[i].end(), h) != dp.eligible[i].end())
        cov.push_back(static_cast<int>(i));
    if (!cov.empty()) {
      dp.hosts.push_back(h);
      dp.covered.push_back(std::move(cov));
    }
  }
  return dp;
}

// Splits each host's VNFs (sorted ids) into chunks of at most `capacity`.
std::vector<VnfmAssignment> materialize(const std::vector<std::pair<PopId, std::vector<VnfId>>>& by_host,
                                        int capacity) {
  std::vector<VnfmAssignment> out;
  for (const auto& [host, ids] : by_host) {
    std::vector<VnfId> sorted = ids;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); i += static_cast<std::size_t>(capacity)) {
      const auto end = std::min(sorted.size(), i + static_cast<std::size_t>(capacity));
      out.push_back({host, std::vector<VnfId>(sorted.begin() + static_cast<std::ptrdiff_t>(i),
                                              sorted.begin() + static_cast<std::ptrdiff_t>(end))});
    }
  }
  std::sort(out.begin(), out.end(), [](const VnfmAssignment& a, const VnfmAssignment& b) {
    return std::tie(a.location, a.managed) < std::tie(b.location, b.managed);
  });
  return out;
}

std::vector<VnfmAssignment> greedy(const DomainProblem& dp) {
  const std::size_t n = dp.vnfs.size();
  std::vector<bool> assigned(n, false);
  std::size_t left = n;
  std::vector<std::pair<PopId, std::vector<VnfId>>> by_host;
  while (left > 0) {
    // Hosts are already in tie-break order, so the first maximum wins.
    std::size_t best = 0;
    std::size_t best_gain = 0;
    for (std::size_t h = 0; h < dp.hosts.size(); ++h) {
      std::size_t gain = 0;
      for (int i : dp.covered[h]) gain += assigned[static_cast<std::size_t>(i)] ? 0 : 1;
      if (gain > best_gain) {
        best_gain = gain;
        best = h;
      }
    }
    std::vector<int> pool;
    for (int i : dp.covered[best])
      if (!assigned[static_cast<std::size_t>(i)]) pool.push_back(i);
    std::stable_sort(pool.begin(), pool.end(), [&](int a, int b) {
      return std::make_tuple(dp.eligible[static_cast<std::size_t>(a)].size(),
                             dp.vnfs[static_cast<std::size_t>(a)]) <
             std::make_tuple(dp.eligible[static_cast<std::size_t>(b)].size(),
                             dp.vnfs[static_cast<std::size_t>(b)]);
    });
    pool.resize(std::min(pool.size(), static_cast<std::size_t>(dp.capacity)));
    std::vector<VnfId> ids;
    for (int i : pool) {
      assigned[static_cast<std::size_t>(i)] = true;
      ids.push_back(dp.vnfs[static_cast<std::size_t>(i)]);
    }
    left -= pool.size();
    by_host.push_back({dp.hosts[best], std::move(ids)});
  }
  // Each greedy round is one VNFM; keep them as separate chunks.
  std::vector<VnfmAssignment> out;
  for (auto& [host, ids] : by_host) {
    std::sort(ids.begin(), ids.end());
    out.push_back({host, std::move(ids)});
  }
  std::sort(out.begin(), out.end(), [](const VnfmAssignment& a, const VnfmAssignment& b) {
    return std::tie(a.location, a.managed) < std::tie(b.location, b.managed);
  });
  return out;
}

// Exact search over VNFM multiplicities per host. VNFMs at one PoP are
// interchangeable, so a host with c VNFMs can serve any c*capacity of the VNFs
// it covers; feasibility of a multiplicity vector is a b-matching.
class ExactSolver {
 public:
  explicit ExactSolver(const DomainProblem& dp) : dp_(dp), n_(static_cast<int>(dp.vnfs.size())) {
    full_ = n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
    std::vector<std::uint64_t> masks;
    for (const auto& cov : dp.covered) {
      std::uint64_t m = 0;
      for (int i : cov) m |= std::uint64_t{1} << i;
      masks.push_back(m);
    }
    // Drop hosts whose cover is contained in a preferred host's cover.
    const std::size_t H = masks.size();
    for (std::size_t h = 0; h < H; ++h) {
      bool dominated = false;
      for (std::size_t g = 0; g < H && !dominated; ++g) {
        if (g == h) continue;
        const bool subset = (masks[h] & ~masks[g]) == 0;
        dominated = subset && (masks[h] != masks[g] || g < h);
      }
      if (!dominated) hosts_.push_back({static_cast<int>(h), masks[h]});
    }
    std::stable_sort(hosts_.begin(), hosts_.end(), [](const Host& a, const Host& b) {
      return std::popcount(a.mask) > std::popcount(b.mask);
    });
    for (auto& h : hosts_)
      h.max_mult = (std::popcount(h.mask) + dp.capacity - 1) / dp.capacity;
    suffix_.assign(hosts_.size() + 1, 0);
    for (std::size_t i = hosts_.size(); i-- > 0;) suffix_[i] = suffix_[i + 1] | hosts_[i].mask;
    mult_.assign(hosts_.size(), 0);
  }

  // Smallest VNFM count in [lower, upper); empty result if none.
  std::vector<VnfmAssignment> solve(int lower, int upper) {
    for (int k = lower; k < upper; ++k) {
      std::fill(mult_.begin(), mult_.end(), 0);
      if (search(0, k, 0)) return extract();
    }
    return {};
  }

 private:
  struct Host {
    int index;  // into dp_.hosts
    std::uint64_t mask;
    int max_mult = 0;
  };

  bool search(std::size_t i, int budget, std::uint64_t covered) {
    if ((covered | suffix_[i]) != full_) return false;
    if (i == hosts_.size() || budget == 0) {
      if (covered != full_) return false;
      return match();
    }
    for (int c = std::min(budget, hosts_[i].max_mult); c >= 0; --c) {
      mult_[i] = c;
      if (search(i + 1, budget - c, c > 0 ? covered | hosts_[i].mask : covered)) return true;
    }
    mult_[i] = 0;
    return false;
  }

  bool match() {
    owner_.assign(static_cast<std::size_t>(n_), -1);
    load_.assign(hosts_.size(), 0);
    for (int v = 0; v < n_; ++v) {
      seen_.assign(hosts_.size(), false);
      if (!augment(v)) return false;
    }
    return true;
  }

  bool augment(int v) {
    for (std::size_t h = 0; h < hosts_.size(); ++h) {
      if (mult_[h] == 0 || seen_[h] || !(hosts_[h].mask >> v & 1)) continue;
      seen_[h] = true;
      if (load_[h] < mult_[h] * dp_.capacity) {
        owner_[static_cast<std::size_t>(v)] = static_cast<int>(h);
        ++load_[h];
        return true;
      }
      for (int u = 0; u < n_; ++u) {
        if (owner_[static_cast<std::size_t>(u)] != static_cast<int>(h)) continue;
        if (augment(u)) {
          // u moved elsewhere; v takes its slot at h.
          owner_[static_cast<std::size_t>(v)] = static_cast<int>(h);
          return true;
        }
      }
    }
    return false;
  }

  std::vector<VnfmAssignment> extract() const {
    std::vector<std::pair<PopId, std::vector<VnfId>>> by_host;
    for (std::size_t h = 0; h < hosts_.size(); ++h) {
      std::vector<VnfId> ids;
      for (int v = 0; v < n_; ++v)
        if (owner_[static_cast<std::size_t>(v)] == static_cast<int>(h))
          ids.push_back(dp_.vnfs[static_cast<std::size_t>(v)]);
      if (!ids.empty())
        by_host.push_back({dp_.hosts[static_cast<std::size_t>(hosts_[h].index)], std::move(ids)});
    }
    return materialize(by_host, dp_.capacity);
  }

  const DomainProblem& dp_;
  int n_;
  std::uint64_t full_ = 0;
  std::vector<Host> hosts_;
  std::vector<std::uint64_t> suffix_;
  std::vector<int> mult_;
  std::vector<int> owner_;
  std::vector<int> load_;
  std::vector<bool> seen_;
};

}  // namespace

std::vector<VnfmAssignment> place_domain_greedy(const ProblemInstance& instance,
                                                const DomainView& domain) {
  if (domain.vnfs.empty()) return {};
  return greedy(build_problem(instance, domain));
}

std::vector<VnfmAssignment> place_domain_exact(const ProblemInstance& instance,
                                               const DomainView& domain) {
  if (domain.vnfs.empty()) return {};
  if (static_cast<int>(domain.vnfs.size()) > kMaxExactDomainVnfs)
    throw Error(ErrorCode::kInvalidArgument,
                "exact VNFM placement supports at most " +
                    std::to_string(kMaxExactDomainVnfs) + " VNFs per domain");
  const DomainProblem dp = build_problem(instance, domain);
  auto fallback = greedy(dp);
  const int n = static_cast<int>(dp.vnfs.size());
  const int lower = (n + dp.capacity - 1) / dp.capacity;
  ExactSolver solver(dp);
  auto better = solver.solve(lower, static_cast<int>(fallback.size()));
  return better.empty() ? fallback : better;
}

std::vector<VnfmAssignment> place_domain(const ProblemInstance& instance,
                                         const DomainView& domain,
                                         const VnfmPlacementOptions& options) {
  switch (options.mode) {
    case PlacementMode::kExact:
      return place_domain_exact(instance, domain);
    case PlacementMode::kGreedy:
      return place_domain_greedy(instance, domain);
    case PlacementMode::kAuto:
      break;
  }
  const auto n = static_cast<int>(domain.vnfs.size());
  if (n <= options.exact_threshold && n <= kMaxExactDomainVnfs)
    return place_domain_exact(instance, domain);
  return place_domain_greedy(instance, domain);
}

Solution two_step_place(const ProblemInstance& instance, const TspParams& params,
                        TspStats* stats) {
  TabuResult details;
  Solution solution;
  solution.plan = place_nfvos(instance, params.tabu, &details);
  if (stats) *stats = {details.iterations, details.last_improvement};
  for (const auto& domain : domains_of(instance, solution.plan)) {
    auto vnfms = place_domain(instance, domain, params.vnfm);
    solution.vnfms.insert(solution.vnfms.end(), std::make_move_iterator(vnfms.begin()),
                          std::make_move_iterator(vnfms.end()));
  }
  return solution;
}

}  // namespace nfvplace
