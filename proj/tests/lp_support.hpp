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

// Conversions between the functional solution encoding, dense 0/1 points
// and LP column vectors.

#ifndef NFVPLACE_TESTS_LP_SUPPORT_HPP
#define NFVPLACE_TESTS_LP_SUPPORT_HPP

#include <random>
#include <vector>

#include "nfvplace/ilp_model.hpp"
#include "oracles.hpp"

namespace nfvplace::testing {

/// VNFM m of the solution becomes model index m; needs |vnfms| <= |V|.
inline BinaryPoint point_of(const ProblemInstance& in, const Solution& s) {
  BinaryPoint b(in.pop_count(), in.vnf_count());
  for (int p = 0; p < in.pop_count(); ++p) {
    b.H(p) = s.plan.nfvo_at[static_cast<std::size_t>(p)] ? 1 : 0;
    const PopId head = s.plan.head_of[static_cast<std::size_t>(p)];
    if (head != kNoHead) b.R(p, head) = 1;
  }
  for (std::size_t m = 0; m < s.vnfms.size(); ++m) {
    b.X(static_cast<int>(m), s.vnfms[m].location) = 1;
    for (VnfId v : s.vnfms[m].managed) b.Y(v, static_cast<int>(m), s.vnfms[m].location) = 1;
  }
  return b;
}

/// Column vector with z = y * r.
inline std::vector<int> columns_of(const BinaryPoint& b) {
  const LpLayout L{b.n, b.nv};
  std::vector<int> col(static_cast<std::size_t>(L.variable_count()), 0);
  for (int p = 0; p < b.n; ++p) col[static_cast<std::size_t>(L.h(p))] = b.H(p);
  for (int q = 0; q < b.n; ++q)
    for (int p = 0; p < b.n; ++p) col[static_cast<std::size_t>(L.r(q, p))] = b.R(q, p);
  for (int m = 0; m < b.nv; ++m)
    for (int p = 0; p < b.n; ++p) col[static_cast<std::size_t>(L.x(m, p))] = b.X(m, p);
  for (int v = 0; v < b.nv; ++v)
    for (int m = 0; m < b.nv; ++m)
      for (int q = 0; q < b.n; ++q) {
        col[static_cast<std::size_t>(L.y(v, m, q))] = b.Y(v, m, q);
        for (int p = 0; p < b.n; ++p)
          col[static_cast<std::size_t>(L.z(v, m, q, p))] = b.Y(v, m, q) * b.R(q, p);
      }
  return col;
}

/// Arbitrary (mostly infeasible) solution with at most |V| VNFMs.
inline Solution random_solution(const ProblemInstance& in, std::mt19937_64& rng) {
  const int n = in.pop_count(), nv = in.vnf_count();
  auto pick = [&rng](int k) { return std::uniform_int_distribution<int>(0, k - 1)(rng); };
  auto coin = [&rng](double p) { return std::bernoulli_distribution(p)(rng); };
  Solution s;
  s.plan.nfvo_at.assign(static_cast<std::size_t>(n), false);
  s.plan.head_of.assign(static_cast<std::size_t>(n), kNoHead);
  std::vector<PopId> active;
  for (int p = 0; p < n; ++p)
    if (coin(0.4)) {
      s.plan.nfvo_at[static_cast<std::size_t>(p)] = true;
      active.push_back(p);
    }
  if (active.empty()) {
    const int p = pick(n);
    s.plan.nfvo_at[static_cast<std::size_t>(p)] = true;
    active.push_back(p);
  }
  for (int q = 0; q < n; ++q) {
    auto& h = s.plan.head_of[static_cast<std::size_t>(q)];
    if (s.plan.nfvo_at[static_cast<std::size_t>(q)] && coin(0.9))
      h = q;
    else if (coin(0.9))
      h = active[static_cast<std::size_t>(pick(static_cast<int>(active.size())))];
    else if (coin(0.5))
      h = pick(n);
  }
  if (nv == 0) return s;
  const int k = 1 + pick(nv);
  for (int m = 0; m < k; ++m) s.vnfms.push_back({pick(n), {}});
  for (VnfId v = 0; v < nv; ++v) {
    if (coin(0.05)) continue;
    const int m = pick(k);
    s.vnfms[static_cast<std::size_t>(m)].managed.push_back(v);
    if (k > 1 && coin(0.05))
      s.vnfms[static_cast<std::size_t>((m + 1) % k)].managed.push_back(v);
  }
  return s;
}

}  // namespace nfvplace::testing

#endif  // NFVPLACE_TESTS_LP_SUPPORT_HPP
