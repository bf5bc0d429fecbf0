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

// Parameter sweeps over the VNF count with multi-seed runs, written as CSV.
//
// For every |V| in the sweep the VNF locations are drawn uniformly at random
// from a seed derived from (base_seed, |V|); all algorithms at that point see
// the same instance. TSP runs use seeds base_seed + run; the exact solver is
// deterministic and runs once per point.

#ifndef NFVPLACE_HARNESS_HPP
#define NFVPLACE_HARNESS_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nfvplace/exact_oracle.hpp"
#include "nfvplace/topology.hpp"
#include "nfvplace/vnfm_place.hpp"

namespace nfvplace {

enum class Algorithm { kTsp, kExact };

std::string to_string(Algorithm algorithm);

enum class VnfDraw {
  kRedraw,       // independent placement per sweep point
  kIncremental,  // point |V| keeps the first |V| VNFs of one draw
};

struct ExperimentConfig {
  std::optional<std::filesystem::path> instance_path;
  std::optional<GeneratorConfig> generator;
  std::string instance_name;
  std::vector<int> vnf_counts{10, 20, 30, 40, 50, 60};
  std::vector<Algorithm> algorithms{Algorithm::kTsp};
  int runs_per_point = 20;
  std::uint64_t base_seed = 1;
  std::filesystem::path output = "experiment.csv";
  VnfDraw draw = VnfDraw::kRedraw;
  double vnfm_delay_bound_ms = 30.0;
  double nfvo_vnfm_delay_bound_ms = 45.0;
  TspParams tsp;
  OracleBudget oracle_budget;
  /// Measured wall time breaks byte-identical output, so it is opt-in;
  /// otherwise runtime_ms is written as 0.00.
  bool record_runtime = false;
  std::optional<std::filesystem::path> solutions_dir;
};

/// Relative paths inside the config resolve against `base_dir`.
ExperimentConfig parse_experiment_config(std::string_view json_text,
                                         const std::filesystem::path& base_dir = {});
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

struct RunRecord {
  std::string instance;
  int pops = 0;
  int vnfs = 0;
  Algorithm algorithm = Algorithm::kTsp;
  std::uint64_t seed = 0;
  std::optional<int> objective;
  std::optional<int> nfvo_count;
  std::optional<int> vnfm_count;
  std::uint64_t iterations = 0;  // tabu iterations, or oracle nodes
  double runtime_ms = 0.0;
  std::string status;

  bool success() const { return status == "ok" || status == "optimal"; }
};

inline constexpr std::string_view kCsvHeader =
    "instance,pops,vnfs,algorithm,seed,objective,nfvo_count,vnfm_count,iterations,"
    "runtime_ms,status";

/// The instance used at one sweep point.
ProblemInstance sweep_instance(const ExperimentConfig& config, const ProblemInstance& base,
                               int vnf_count);

/// Runs the sweep; solver failures become rows, never exceptions.
std::vector<RunRecord> run_experiment(const ExperimentConfig& config);

/// Per-run rows in (|V|, algorithm, seed) order, each group followed by an
/// aggregate row (seed "mean", means over successful runs, 2 decimals).
std::string records_to_csv(const ExperimentConfig& config, const std::vector<RunRecord>& rows);

/// run_experiment + records_to_csv written to config.output.
std::vector<RunRecord> run_experiment_to_csv(const ExperimentConfig& config);

}  // namespace nfvplace

#endif  // NFVPLACE_HARNESS_HPP
