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

// Problem instances: NFVI-PoPs, the inter-PoP delay matrix, the VNF
// inventory with per-VNF delay bounds, and the MANO capacities and bounds.
//
// Delays are round-trip milliseconds. The matrix must be symmetric with a
// zero diagonal; colocated blocks therefore satisfy every delay bound.
// The candidate VNFM set is implicit: at most one VNFM per VNF is ever useful.

#ifndef NFVPLACE_TOPOLOGY_HPP
#define NFVPLACE_TOPOLOGY_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nfvplace {

using PopId = int;
using VnfId = int;

struct Point {
  double x_km = 0.0;
  double y_km = 0.0;

  bool operator==(const Point&) const = default;
};

struct Pop {
  PopId id = 0;
  std::string label;
  std::optional<Point> coordinates;

  bool operator==(const Pop&) const = default;
};

/// Dense |P| x |P| matrix of round-trip delays in milliseconds.
class DelayMatrix {
 public:
  DelayMatrix() = default;
  explicit DelayMatrix(std::size_t n) : n_(n), values_(n * n, 0.0) {}

  /// Throws Error(kValidation) if the rows are not square.
  static DelayMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const noexcept { return n_; }

  double operator()(PopId p, PopId q) const {
    return values_[static_cast<std::size_t>(p) * n_ + static_cast<std::size_t>(q)];
  }
  double& operator()(PopId p, PopId q) {
    return values_[static_cast<std::size_t>(p) * n_ + static_cast<std::size_t>(q)];
  }

  std::vector<std::vector<double>> rows() const;

  bool operator==(const DelayMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> values_;
};

struct VnfInstance {
  VnfId id = 0;
  PopId location = 0;
  /// Bound between the VNF (and the VIM of its PoP) and its VNFM.
  double vnfm_delay_bound_ms = 30.0;
  /// Bound between the domain's NFVO and the VNFM managing this VNF.
  double nfvo_vnfm_delay_bound_ms = 45.0;

  bool operator==(const VnfInstance&) const = default;
};

struct ManoParameters {
  /// VNF instances an NFVO can hold in its domain.
  int nfvo_capacity = 20;
  /// VNF instances a single VNFM can manage.
  int vnfm_capacity = 10;
  double gso_nfvo_delay_bound_ms = 80.0;
  double nfvo_vim_delay_bound_ms = 60.0;
  PopId gso_location = 0;

  bool operator==(const ManoParameters&) const = default;
};

/// Unvalidated instance contents, as read from a file.
struct InstanceData {
  std::vector<Pop> pops;
  DelayMatrix delays;
  std::vector<VnfInstance> vnfs;
  ManoParameters params;

  bool operator==(const InstanceData&) const = default;
};

struct ValidationReport {
  std::vector<std::string> violations;

  bool empty() const noexcept { return violations.empty(); }
};

ValidationReport validate_instance(const InstanceData& data);

/// A validated, immutable problem instance. Safe to share between threads.
class ProblemInstance {
 public:
  /// Throws Error(kValidation) naming the first violated invariant.
  explicit ProblemInstance(InstanceData data);

  const InstanceData& data() const noexcept { return data_; }
  const std::vector<Pop>& pops() const noexcept { return data_.pops; }
  const DelayMatrix& delays() const noexcept { return data_.delays; }
  const std::vector<VnfInstance>& vnfs() const noexcept { return data_.vnfs; }
  const ManoParameters& params() const noexcept { return data_.params; }

  int pop_count() const noexcept { return static_cast<int>(data_.pops.size()); }
  int vnf_count() const noexcept { return static_cast<int>(data_.vnfs.size()); }
  double delay(PopId p, PopId q) const { return data_.delays(p, q); }
  const VnfInstance& vnf(VnfId v) const { return data_.vnfs[static_cast<std::size_t>(v)]; }

  /// Copy of this instance with the VNF inventory replaced.
  ProblemInstance with_vnfs(std::vector<VnfInstance> vnfs) const;

  bool operator==(const ProblemInstance&) const = default;

 private:
  InstanceData data_;
};

ValidationReport validate_instance(const ProblemInstance& instance);

// Instance file I/O. The JSON schema has exactly the keys `pops`, `delays`,
// `vnfs` and `params`; unknown keys anywhere are parse errors.
InstanceData parse_instance(std::string_view json_text);
std::string instance_to_json(const InstanceData& data);
ProblemInstance load_problem(const std::filesystem::path& path);
InstanceData load_instance_data(const std::filesystem::path& path);
void save_problem(const ProblemInstance& instance, const std::filesystem::path& path);

struct GeneratorConfig {
  int pop_count = 8;
  int vnf_count = 10;
  double area_side_km = 2500.0;
  double delay_per_km = 0.025;
  double delay_jitter_fraction = 0.1;
  double vnfm_delay_bound_ms = 30.0;
  double nfvo_vnfm_delay_bound_ms = 45.0;
  int nfvo_capacity = 20;
  int vnfm_capacity = 10;
  double gso_nfvo_delay_bound_ms = 80.0;
  double nfvo_vim_delay_bound_ms = 60.0;
  std::uint64_t seed = 1;
};

GeneratorConfig parse_generator_config(std::string_view json_text);

/// PoPs uniform in a square, delay = per-km factor x distance x (1 +/- jitter)
/// symmetrized by averaging, VNFs uniform over PoPs, GSO at the 1-center PoP.
/// Pure function of the config.
ProblemInstance generate_instance(const GeneratorConfig& config);

/// PoP minimizing the maximum delay to every other PoP (lowest id on ties).
PopId one_center(const DelayMatrix& delays);

/// Replaces the inventory with `count` VNFs placed uniformly at random.
ProblemInstance with_uniform_vnfs(const ProblemInstance& instance, int count,
                                  double vnfm_delay_bound_ms,
                                  double nfvo_vnfm_delay_bound_ms,
                                  std::uint64_t seed);

}  // namespace nfvplace

#endif  // NFVPLACE_TOPOLOGY_HPP
