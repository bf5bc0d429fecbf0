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

// The NFVO/VNFM placement ILP: solution representation, objective,
// constraint checker and LP-format exporter.
//
// Decision variables in the model:
//   h_p      NFVO active at PoP p
//   r_q_p    PoP q belongs to the domain headed by the NFVO at p
//   x_m_p    VNFM m is placed at PoP p
//   y_v_m_p  VNF v is managed by VNFM m placed at p
//   z_v_m_q_p  = y_v_m_q * r_q_p (linearization auxiliary)
//
// The checker works on the functional encoding (DomainPlan / Solution) and
// evaluates the original, non-linear constraints. Linearization only exists
// in the exported model.

#ifndef NFVPLACE_ILP_MODEL_HPP
#define NFVPLACE_ILP_MODEL_HPP

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nfvplace/topology.hpp"

namespace nfvplace {

/// head_of value of a PoP that belongs to no domain.
inline constexpr PopId kNoHead = -1;

struct DomainPlan {
  std::vector<bool> nfvo_at;    // h_p
  std::vector<PopId> head_of;   // head_of[q] == p  <=>  r_{q,p} == 1

  int pop_count() const noexcept { return static_cast<int>(head_of.size()); }
  int nfvo_count() const noexcept;
  /// Active NFVO PoPs in increasing order.
  std::vector<PopId> heads() const;
  /// PoPs whose head is `head`, in increasing order.
  std::vector<PopId> members(PopId head) const;

  bool operator==(const DomainPlan&) const = default;
};

struct VnfmAssignment {
  PopId location = 0;
  std::vector<VnfId> managed;

  bool operator==(const VnfmAssignment&) const = default;
};

struct Solution {
  DomainPlan plan;
  std::vector<VnfmAssignment> vnfms;

  int nfvo_count() const noexcept { return plan.nfvo_count(); }
  int vnfm_count() const noexcept { return static_cast<int>(vnfms.size()); }

  bool operator==(const Solution&) const = default;
};

enum class ConstraintFamily {
  kC2 = 2, kC3, kC4, kC5, kC6, kC7, kC8, kC9, kC10, kC11, kC12, kC13, kC14, kC15,
};

/// "C2" ... "C15".
std::string to_string(ConstraintFamily family);

struct Violation {
  ConstraintFamily family;
  std::vector<int> index;  // offending index tuple, family specific
  double measured = 0.0;
  double bound = 0.0;

  bool operator==(const Violation&) const = default;
};

struct ViolationReport {
  std::vector<Violation> entries;

  bool feasible() const noexcept { return entries.empty(); }
  std::size_t count(ConstraintFamily family) const;
};

/// Number of NFVOs plus number of VNFMs.
int objective_value(const Solution& solution);

/// Evaluates constraint families C2-C15. Throws Error(kOutOfRange) when the
/// solution refers to PoPs or VNFs the instance does not have.
///
/// Index tuples per family: C2 {q}; C3 {q, p}; C4 {p}; C6 {v}; C8 {v, m};
/// C9 {p}; C10/C11 {m}; C12 {p}; C13 {q, p}; C14/C15 {v, m}. C5 and C7 hold
/// by construction of the encoding and never appear.
ViolationReport check_feasibility(const ProblemInstance& instance,
                                  const Solution& solution);

/// ceil(|V| / nfvo_capacity) + ceil(|V| / vnfm_capacity).
int capacity_lower_bound(const ProblemInstance& instance);

// ---------------------------------------------------------------------------
// Linear model

/// Column numbering of the exported model; |M| = |V|.
struct LpLayout {
  int pops = 0;
  int vnfs = 0;

  int vnfms() const noexcept { return vnfs; }
  int h(int p) const noexcept { return p; }
  int r(int q, int p) const noexcept { return pops + q * pops + p; }
  int x(int m, int p) const noexcept { return pops + pops * pops + m * pops + p; }
  int y(int v, int m, int p) const noexcept {
    return pops + pops * pops + vnfms() * pops + (v * vnfms() + m) * pops + p;
  }
  int z(int v, int m, int q, int p) const noexcept {
    return pops + pops * pops + vnfms() * pops + vnfs * vnfms() * pops +
           ((v * vnfms() + m) * pops + q) * pops + p;
  }
  int variable_count() const noexcept {
    return pops + pops * pops + vnfms() * pops + vnfs * vnfms() * pops +
           vnfs * vnfms() * pops * pops;
  }
};

enum class RowSense { kLessEqual, kEqual, kGreaterEqual };

struct LpTerm {
  double coefficient = 0.0;
  int variable = 0;
};

struct LpRow {
  std::string name;     // "c<family>_<indices>"
  std::string family;   // "c2", "c3", ..., "c21"
  std::vector<LpTerm> terms;
  RowSense sense = RowSense::kLessEqual;
  double rhs = 0.0;
};

class LpModel {
 public:
  explicit LpModel(LpLayout layout);

  const LpLayout& layout() const noexcept { return layout_; }
  const std::vector<std::string>& variable_names() const noexcept { return names_; }
  const std::vector<LpTerm>& objective() const noexcept { return objective_; }
  const std::vector<LpRow>& rows() const noexcept { return rows_; }

  void set_objective(std::vector<LpTerm> terms) { objective_ = std::move(terms); }
  void add_row(LpRow row) { rows_.push_back(std::move(row)); }

  std::size_t family_row_count(std::string_view family) const;

  /// True when every row of `family` (all rows if empty) holds for the
  /// given 0/1 column values.
  bool satisfied_by(std::span<const int> values, std::string_view family = {}) const;

  std::string to_lp_text() const;

 private:
  LpLayout layout_;
  std::vector<std::string> names_;
  std::vector<LpTerm> objective_;
  std::vector<LpRow> rows_;
};

/// Builds the linearized model: the objective, rows c2-c7 and c10-c14 as
/// stated, and rows c16-c21 in place of the bilinear C8, C9 and C15. Fixed inputs (VNF locations, GSO location)
/// are folded in as constants; rows whose constant factor is zero are
/// omitted, so c12 has |P|-1 rows, c14 |V||M|(|P|-1) and c16 |V||M||P|^2.
LpModel build_lp_model(const ProblemInstance& instance);

struct LpSummary {
  std::size_t variables = 0;
  std::size_t constraints = 0;
};

LpSummary export_lp(const ProblemInstance& instance, const std::filesystem::path& path);

struct LpCheckResult {
  std::vector<std::string> diagnostics;
  std::size_t constraints = 0;
  std::size_t binaries = 0;
  /// Row counts keyed by the row-name prefix before the first '_'.
  std::map<std::string, std::size_t> rows_by_family;

  bool ok() const noexcept { return diagnostics.empty(); }
};

/// Minimal grammar check for the LP dialect written by export_lp.
LpCheckResult check_lp_text(std::string_view text);

}  // namespace nfvplace

#endif  // NFVPLACE_ILP_MODEL_HPP
