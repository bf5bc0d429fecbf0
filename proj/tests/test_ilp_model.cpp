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

#include <algorithm>
#include <random>
#include <string>

#include "lp_support.hpp"
#include "nfvplace/error.hpp"
#include "nfvplace/ilp_model.hpp"
#include "nfvplace/vnfm_place.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace nfvplace;
using namespace nfvplace::testing;

namespace {

DomainPlan plan_of(std::vector<PopId> heads) {
  DomainPlan plan;
  plan.head_of = heads;
  plan.nfvo_at.assign(heads.size(), false);
  for (PopId h : heads)
    if (h != kNoHead) plan.nfvo_at[static_cast<std::size_t>(h)] = true;
  return plan;
}

bool names(const ViolationReport& r, ConstraintFamily f) { return r.count(f) > 0; }

// Feasible solution from the two-step pipeline.
Solution feasible_solution(const ProblemInstance& in, std::uint64_t seed) {
  TspParams params;
  params.tabu.seed = seed;
  return two_step_place(in, params);
}

}  // namespace

TEST_CASE("objective counts NFVOs and VNFMs") {
  Solution s;
  s.plan = plan_of({0, 0, 2, 2});
  s.vnfms = {{0, {0}}, {1, {1}}, {2, {2}}};
  CHECK(objective_value(s) == 5);

  Solution t;
  t.plan = plan_of({0, 0, 0});
  t.vnfms = {{0, {0, 1}}, {1, {2}}, {2, {3}}};
  CHECK(objective_value(t) == 4);

  Solution empty;
  empty.plan = plan_of({0});
  CHECK(objective_value(empty) == 1);
}

TEST_CASE("checker: colocated single PoP is feasible") {
  const auto in = single_pop(10);
  Solution s;
  s.plan = plan_of({0});
  s.vnfms = {{0, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9}}};
  CHECK(check_feasibility(in, s).feasible());
}

TEST_CASE("checker: cross-domain VNFM is exactly one C8") {
  const auto in = two_clusters(1);  // VNF 0 on PoP 0, VNF 1 on PoP 2
  Solution s;
  s.plan = plan_of({0, 0, 2, 2});
  s.vnfms = {{3, {0}}, {2, {1}}};
  const auto r = check_feasibility(in, s);
  CHECK(r.entries.size() == 1 + r.count(ConstraintFamily::kC14) + r.count(ConstraintFamily::kC15));
  REQUIRE(r.count(ConstraintFamily::kC8) == 1);
  const auto it = std::find_if(r.entries.begin(), r.entries.end(),
                               [](const Violation& v) { return v.family == ConstraintFamily::kC8; });
  CHECK(it->index == std::vector<int>{0, 0});
}

TEST_CASE("checker: cross-domain VNFM in a delay-free network") {
  // Zero delays isolate C8 from every delay family.
  const auto in = make_instance({{0, 0}, {0, 0}}, {0, 1});
  Solution s;
  s.plan = plan_of({0, 1});
  s.vnfms = {{1, {0, 1}}};
  const auto r = check_feasibility(in, s);
  REQUIRE(r.entries.size() == 1);
  CHECK(r.entries[0].family == ConstraintFamily::kC8);
  CHECK(to_string(r.entries[0].family) == "C8");
}

TEST_CASE("checker: 21 VNFs in one domain is one C9") {
  const auto in = single_pop(21);
  Solution s;
  s.plan = plan_of({0});
  std::vector<VnfId> a, b, c;
  for (int v = 0; v < 21; ++v) (v < 10 ? a : v < 20 ? b : c).push_back(v);
  s.vnfms = {{0, a}, {0, b}, {0, c}};
  const auto r = check_feasibility(in, s);
  REQUIRE(r.entries.size() == 1);
  CHECK(r.entries[0].family == ConstraintFamily::kC9);
  CHECK(r.entries[0].measured == 21);
  CHECK(r.entries[0].bound == 20);
}

TEST_CASE("checker: one entry per family on targeted violations") {
  ManoParameters prm;
  prm.vnfm_capacity = 2;
  prm.gso_nfvo_delay_bound_ms = 10;
  prm.nfvo_vim_delay_bound_ms = 10;
  const auto in = make_instance({{0, 20}, {20, 0}}, {0, 0, 0}, prm, {5, 5});

  Solution s;
  s.plan = plan_of({0, 0});
  s.vnfms = {{0, {0, 1, 2}}};
  auto r = check_feasibility(in, s);
  CHECK(r.count(ConstraintFamily::kC10) == 1);
  CHECK(r.count(ConstraintFamily::kC13) == 1);  // PoP 1 is 20 ms from its head

  s.vnfms = {{0, {0, 1}}, {0, {2}}, {0, {}}};
  r = check_feasibility(in, s);
  CHECK(r.count(ConstraintFamily::kC11) == 1);
  CHECK(r.count(ConstraintFamily::kC10) == 0);

  s.plan = plan_of({0, 1});
  s.vnfms = {{1, {0, 1}}, {0, {2}}};
  r = check_feasibility(in, s);
  CHECK(r.count(ConstraintFamily::kC12) == 1);  // NFVO at PoP 1 is 20 ms from the GSO
  CHECK(r.count(ConstraintFamily::kC14) == 2);  // VNFs 0 and 1 are 20 ms from their VNFM
  CHECK(r.count(ConstraintFamily::kC8) == 2);
}

TEST_CASE("checker: C15 measures the VNFM to its head") {
  // Head at 0, VNFM at 1 (in domain), VNF at 1; Omega = 5 < delay(0, 1).
  const auto in = make_instance({{0, 8}, {8, 0}}, {1}, {}, {30, 5});
  Solution s;
  s.plan = plan_of({0, 0});
  s.vnfms = {{1, {0}}};
  const auto r = check_feasibility(in, s);
  REQUIRE(r.entries.size() == 1);
  CHECK(r.entries[0].family == ConstraintFamily::kC15);
  CHECK(r.entries[0].measured == 8);
  CHECK(r.entries[0].bound == 5);
}

TEST_CASE("checker: structural families") {
  const auto in = make_instance({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}, {});
  Solution s;
  s.plan = plan_of({0, 0, kNoHead});
  CHECK(check_feasibility(in, s).count(ConstraintFamily::kC2) == 1);
  s.plan = plan_of({0, 0, 0});
  s.plan.head_of[1] = 2;  // PoP 2 is not active
  CHECK(check_feasibility(in, s).count(ConstraintFamily::kC3) == 1);
  s.plan = plan_of({0, 0, 0});
  s.plan.nfvo_at[1] = true;  // active but headed by 0
  CHECK(check_feasibility(in, s).count(ConstraintFamily::kC4) == 1);
}

TEST_CASE("checker: indices out of range are errors") {
  const auto in = single_pop(2);
  Solution s;
  s.plan = plan_of({0});
  s.vnfms = {{0, {0, 5}}};
  CHECK_THROWS_AS(check_feasibility(in, s), Error);
  try {
    check_feasibility(in, s);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kOutOfRange);
  }
  s.vnfms = {{3, {0, 1}}};
  CHECK_THROWS_AS(check_feasibility(in, s), Error);
  s.vnfms = {{0, {0, 1}}};
  s.plan.head_of = {4};
  CHECK_THROWS_AS(check_feasibility(in, s), Error);
  s.plan = plan_of({0, 0});  // plan for the wrong number of PoPs
  CHECK_THROWS_AS(check_feasibility(in, s), Error);
}

TEST_CASE("capacity lower bound") {
  CHECK(capacity_lower_bound(single_pop(0)) == 0);
  CHECK(capacity_lower_bound(single_pop(1)) == 2);
  CHECK(capacity_lower_bound(random_instance(16, 60, 1)) == 9);
  CHECK(capacity_lower_bound(random_instance(4, 21, 1)) == 2 + 3);
}

// The checker, the literal constraint oracle and the LP rows must agree on
// every solution, feasible or not.
TEST_CASE("checker agrees with the literal constraints and the LP rows") {
  std::mt19937_64 rng(99);
  int feasible = 0, infeasible = 0;
  for (int trial = 0; trial < 600; ++trial) {
    const int pops = 1 + trial % 4;
    const int vnfs = trial % 5;
    const auto in = random_instance(pops, vnfs, 500 + static_cast<unsigned>(trial), 1200.0);
    const LpModel model = build_lp_model(in);
    Solution s = trial % 3 == 0 ? feasible_solution(in, static_cast<unsigned>(trial))
                                : random_solution(in, rng);
    const bool by_checker = check_feasibility(in, s).feasible();
    const auto point = point_of(in, s);
    const bool by_oracle = original_feasible(in, point);
    const bool by_lp = model.satisfied_by(columns_of(point));
    CHECK(by_checker == by_oracle);
    CHECK(by_checker == by_lp);
    (by_checker ? feasible : infeasible)++;
  }
  CHECK(feasible >= 150);
  CHECK(infeasible >= 150);
}

TEST_CASE("checker completeness under single-bit flips") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const auto in = random_instance(6, 8, seed, 1500.0);
    const Solution base = feasible_solution(in, seed);
    REQUIRE(check_feasibility(in, base).feasible());
    const int n = in.pop_count();
    for (PopId p = 0; p < n; ++p) {
      Solution s = base;
      s.plan.nfvo_at[static_cast<std::size_t>(p)] = !s.plan.nfvo_at[static_cast<std::size_t>(p)];
      const auto r = check_feasibility(in, s);
      // h_p off leaves p (and its members) pointing at an inactive head;
      // h_p on leaves an active NFVO outside its own domain.
      CHECK(names(r, base.plan.nfvo_at[static_cast<std::size_t>(p)] ? ConstraintFamily::kC3
                                                                     : ConstraintFamily::kC4));
      Solution t = base;
      t.plan.head_of[static_cast<std::size_t>(p)] = kNoHead;  // r_{p,head} 1 -> 0
      CHECK(names(check_feasibility(in, t), ConstraintFamily::kC2));
    }
    for (std::size_t m = 0; m < base.vnfms.size(); ++m) {
      for (std::size_t i = 0; i < base.vnfms[m].managed.size(); ++i) {
        Solution s = base;  // y 1 -> 0
        s.vnfms[m].managed.erase(s.vnfms[m].managed.begin() + static_cast<long>(i));
        CHECK(names(check_feasibility(in, s), ConstraintFamily::kC6));
        if (base.vnfms.size() > 1) {  // y 0 -> 1 on another VNFM
          Solution t = base;
          t.vnfms[(m + 1) % base.vnfms.size()].managed.push_back(base.vnfms[m].managed[i]);
          CHECK(names(check_feasibility(in, t), ConstraintFamily::kC6));
        }
      }
      Solution s = base;  // x 1 -> 0 removes the VNFM
      s.vnfms.erase(s.vnfms.begin() + static_cast<long>(m));
      CHECK(names(check_feasibility(in, s), ConstraintFamily::kC6));
    }
    Solution idle = base;  // x 0 -> 1 adds an idle VNFM
    idle.vnfms.push_back({0, {}});
    CHECK(names(check_feasibility(in, idle), ConstraintFamily::kC11));
  }
}

TEST_CASE("LP row counts follow the index sets") {
  for (int pops = 1; pops <= 4; ++pops)
    for (int vnfs = 0; vnfs <= 3; ++vnfs) {
      const auto in = random_instance(pops, vnfs, 11);
      const auto model = build_lp_model(in);
      const std::size_t P = static_cast<std::size_t>(pops), V = static_cast<std::size_t>(vnfs),
                        M = V;
      CAPTURE(pops);
      CAPTURE(vnfs);
      CHECK(model.family_row_count("c2") == P);
      CHECK(model.family_row_count("c3") == P * P);
      CHECK(model.family_row_count("c4") == P);
      CHECK(model.family_row_count("c5") == M);
      CHECK(model.family_row_count("c6") == V);
      CHECK(model.family_row_count("c7") == V * M * P);
      CHECK(model.family_row_count("c10") == M * P);
      CHECK(model.family_row_count("c11") == M * P);
      CHECK(model.family_row_count("c12") == P - 1);
      CHECK(model.family_row_count("c13") == P * (P - 1));
      CHECK(model.family_row_count("c14") == V * M * (P - 1));
      CHECK(model.family_row_count("c16") == V * M * P * P);
      CHECK(model.family_row_count("c17") == P);
      CHECK(model.family_row_count("c18") == V * M * P * (P - 1));
      for (const char* f : {"c19", "c20", "c21"}) CHECK(model.family_row_count(f) == V * M * P * P);
      CHECK(model.family_row_count("c8") == 0);
      CHECK(model.family_row_count("c9") == 0);
      CHECK(model.family_row_count("c15") == 0);
      const std::size_t vars = P + P * P + M * P + V * M * P + V * M * P * P;
      CHECK(model.variable_names().size() == vars);
    }
}

TEST_CASE("LP export for |P|=2, |V|=1 matches hand counts") {
  TempDir dir("lp");
  const auto in = make_instance({{0, 10}, {10, 0}}, {1});
  const auto summary = export_lp(in, dir / "m.lp");
  // h:2 r:4 x:2 y:2 z:4
  CHECK(summary.variables == 14);
  const auto text = read_file(dir / "m.lp");
  const auto check = check_lp_text(text);
  CHECK(check.ok());
  CHECK(check.binaries == 14);
  CHECK(check.constraints == summary.constraints);
  CHECK(check.rows_by_family.at("c2") == 2);
  CHECK(check.rows_by_family.at("c3") == 4);
  CHECK(check.rows_by_family.at("c4") == 2);
  CHECK(text.find("h_0") != std::string::npos);
  CHECK(text.find("r_1_0") != std::string::npos);
  CHECK(text.find("x_0_1") != std::string::npos);
  CHECK(text.find("y_0_0_1") != std::string::npos);
  CHECK(text.find("z_0_0_1_0") != std::string::npos);
  CHECK(text.find("l_") == std::string::npos);  // locations are constants
  CHECK(text.find("w_") == std::string::npos);
}

TEST_CASE("LP files pass the grammar check") {
  TempDir dir("lpgrammar");
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const auto in = random_instance(1 + static_cast<int>(seed % 5), static_cast<int>(seed % 4), seed);
    const auto path = dir / ("m" + std::to_string(seed) + ".lp");
    const auto summary = export_lp(in, path);
    const auto result = check_lp_text(read_file(path));
    CHECK(result.ok());
    CHECK(result.constraints == summary.constraints);
    CHECK(result.binaries == summary.variables);
  }
}

TEST_CASE("LP grammar check rejects malformed files") {
  const std::string good =
      "Minimize\n obj: h_0 + h_1\nSubject To\n c2_0: r_0_0 + r_0_1 = 1\n"
      " c3_0_1: r_0_1 - h_1 <= 0\nBinary\n h_0 h_1 r_0_0 r_0_1\nEnd\n";
  REQUIRE(check_lp_text(good).ok());
  CHECK(check_lp_text(good).rows_by_family.at("c3") == 1);
  auto broken = [&](const std::string& from, const std::string& to) {
    std::string s = good;
    s.replace(s.find(from), from.size(), to);
    return check_lp_text(s);
  };
  CHECK_FALSE(broken("Minimize", "Maximise").ok());
  CHECK_FALSE(broken("= 1", "= ").ok());
  CHECK(broken("<= 0", "=< 0").ok());  // accepted spelling
  CHECK_FALSE(broken("<= 0", "<> 0").ok());
  CHECK_FALSE(broken(" r_0_1 - h_1", " r_0_1 2 h_1").ok());
  CHECK_FALSE(broken(" r_0_1 - h_1", " r_0_1 - - h_1").ok());
  CHECK_FALSE(broken(" h_0 h_1 r_0_0", " h_0 r_0_0").ok());            // h_1 not binary
  CHECK_FALSE(broken(" h_0 h_1 r_0_0", " h_0 h_1 h_1 r_0_0").ok());    // declared twice
  CHECK_FALSE(broken("End\n", "").ok());
  CHECK_FALSE(broken("c3_0_1:", "c2_0:").ok());                        // duplicate row name
  CHECK_FALSE(broken(" c2_0: ", " 2bad: ").ok());
  CHECK_FALSE(check_lp_text("").ok());
}

TEST_CASE("LP text round-trips the model rows") {
  const auto in = random_instance(3, 2, 4);
  const auto model = build_lp_model(in);
  const auto result = check_lp_text(model.to_lp_text());
  CHECK(result.ok());
  CHECK(result.constraints == model.rows().size());
  for (const auto& [family, count] : result.rows_by_family)
    CHECK(model.family_row_count(family) == count);
}

// For |P| = 2, |V| = 1 every column is enumerated, z included: the projection
// of the c16-c21 feasible set onto (h, r, y) must equal the set cut out by
// the bilinear C8, C9 and C15.
TEST_CASE("linearization: full enumeration with z for |P|=2, |V|=1") {
  for (double d : {10.0, 50.0}) {
    ManoParameters prm;
    prm.nfvo_capacity = 1;
    const auto in = make_instance({{0, d}, {d, 0}}, {1}, prm, {30, 45});
    const auto model = build_lp_model(in);
    const LpLayout L = model.layout();
    std::vector<int> zcols;
    for (int q = 0; q < 2; ++q)
      for (int p = 0; p < 2; ++p) zcols.push_back(L.z(0, 0, q, p));
    int agree = 0, original_true = 0;
    for (std::uint32_t bits = 0; bits < (1u << 8); ++bits) {  // h:2 r:4 y:2
      BinaryPoint b(2, 1);
      b.h = {int(bits & 1), int(bits >> 1 & 1)};
      b.r = {int(bits >> 2 & 1), int(bits >> 3 & 1), int(bits >> 4 & 1), int(bits >> 5 & 1)};
      b.y = {int(bits >> 6 & 1), int(bits >> 7 & 1)};
      const bool original = original_c8(in, b) && original_c9(in, b) && original_c15(in, b);
      auto cols = columns_of(b);
      bool exists = false;
      for (std::uint32_t zb = 0; zb < 16 && !exists; ++zb) {
        for (int i = 0; i < 4; ++i) cols[static_cast<std::size_t>(zcols[static_cast<std::size_t>(i)])] = (zb >> i) & 1;
        bool all = true;
        for (const char* f : {"c16", "c17", "c18", "c19", "c20", "c21"})
          all = all && model.satisfied_by(cols, f);
        exists = all;
      }
      CHECK(original == exists);
      agree += original == exists;
      original_true += original;
    }
    CHECK(agree == 256);
    CHECK(original_true > 0);
    CHECK(original_true < 256);
  }
}

TEST_CASE("linearization rows force z = y * r on binaries") {
  const auto in = make_instance({{0}}, {0});
  const auto model = build_lp_model(in);
  const LpLayout L = model.layout();
  for (int y = 0; y <= 1; ++y)
    for (int r = 0; r <= 1; ++r)
      for (int z = 0; z <= 1; ++z) {
        std::vector<int> cols(static_cast<std::size_t>(L.variable_count()), 0);
        cols[static_cast<std::size_t>(L.y(0, 0, 0))] = y;
        cols[static_cast<std::size_t>(L.r(0, 0))] = r;
        cols[static_cast<std::size_t>(L.z(0, 0, 0, 0))] = z;
        const bool ok = model.satisfied_by(cols, "c19") && model.satisfied_by(cols, "c20") &&
                        model.satisfied_by(cols, "c21");
        CHECK(ok == (z == y * r));
      }
}
