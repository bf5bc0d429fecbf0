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

#include "nfvplace/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <sstream>
#include <tuple>

#include "json_util.hpp"
#include "nfvplace/error.hpp"
#include "nfvplace/solution_io.hpp"

namespace nfvplace {

using detail::json;

std::string to_string(Algorithm algorithm) {
  return algorithm == Algorithm::kTsp ? "tsp" : "exact";
}

ExperimentConfig parse_experiment_config(std::string_view json_text,
                                         const std::filesystem::path& base_dir) {
  using namespace detail;
  const json root = parse_json_text(json_text);
  require_object(root, "experiment");
  reject_unknown_keys(root, "experiment",
                      {"instance", "generator", "name", "vnf_counts", "algorithms",
                       "runs_per_point", "base_seed", "output", "vnf_draw", "omega_ms",
                       "big_omega_ms", "tabu", "exact_threshold", "oracle_budget",
                       "record_runtime", "solutions_dir"});
  auto resolve = [&base_dir](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_relative() && !base_dir.empty() ? base_dir / path : path;
  };

  ExperimentConfig cfg;
  if (auto it = root.find("instance"); it != root.end())
    cfg.instance_path = resolve(get_string(*it, "experiment.instance"));
  if (auto it = root.find("generator"); it != root.end())
    cfg.generator = parse_generator_config(it->dump());
  if (cfg.instance_path.has_value() == cfg.generator.has_value())
    parse_fail("experiment: exactly one of 'instance' and 'generator' is required");
  if (auto it = root.find("name"); it != root.end())
    cfg.instance_name = get_string(*it, "experiment.name");
  else
    cfg.instance_name = cfg.instance_path ? cfg.instance_path->stem().string() : "generated";

  if (auto it = root.find("vnf_counts"); it != root.end()) {
    cfg.vnf_counts.clear();
    for (const auto& c : require_array(*it, "experiment.vnf_counts"))
      cfg.vnf_counts.push_back(static_cast<int>(get_integer(c, "experiment.vnf_counts")));
  }
  if (auto it = root.find("algorithms"); it != root.end()) {
    cfg.algorithms.clear();
    for (const auto& a : require_array(*it, "experiment.algorithms")) {
      const auto name = get_string(a, "experiment.algorithms");
      if (name == "tsp")
        cfg.algorithms.push_back(Algorithm::kTsp);
      else if (name == "exact")
        cfg.algorithms.push_back(Algorithm::kExact);
      else
        parse_fail("experiment.algorithms: unknown algorithm '" + name + "'");
    }
  }
  if (auto it = root.find("runs_per_point"); it != root.end())
    cfg.runs_per_point = static_cast<int>(get_integer(*it, "experiment.runs_per_point"));
  if (auto it = root.find("base_seed"); it != root.end())
    cfg.base_seed = static_cast<std::uint64_t>(get_integer(*it, "experiment.base_seed"));
  if (auto it = root.find("output"); it != root.end())
    cfg.output = resolve(get_string(*it, "experiment.output"));
  if (auto it = root.find("vnf_draw"); it != root.end()) {
    const auto mode = get_string(*it, "experiment.vnf_draw");
    if (mode == "redraw")
      cfg.draw = VnfDraw::kRedraw;
    else if (mode == "incremental")
      cfg.draw = VnfDraw::kIncremental;
    else
      parse_fail("experiment.vnf_draw: expected 'redraw' or 'incremental'");
  }
  if (auto it = root.find("omega_ms"); it != root.end())
    cfg.vnfm_delay_bound_ms = get_number(*it, "experiment.omega_ms");
  if (auto it = root.find("big_omega_ms"); it != root.end())
    cfg.nfvo_vnfm_delay_bound_ms = get_number(*it, "experiment.big_omega_ms");
  if (auto it = root.find("tabu"); it != root.end()) {
    require_object(*it, "experiment.tabu");
    reject_unknown_keys(*it, "experiment.tabu",
                        {"stop_patience", "tabu_tenure", "neighborhood_samples"});
    auto& t = cfg.tsp.tabu;
    if (auto f = it->find("stop_patience"); f != it->end())
      t.stop_patience = static_cast<int>(get_integer(*f, "tabu.stop_patience"));
    if (auto f = it->find("tabu_tenure"); f != it->end())
      t.tabu_tenure = static_cast<int>(get_integer(*f, "tabu.tabu_tenure"));
    if (auto f = it->find("neighborhood_samples"); f != it->end())
      t.neighborhood_samples = static_cast<int>(get_integer(*f, "tabu.neighborhood_samples"));
  }
  if (auto it = root.find("exact_threshold"); it != root.end())
    cfg.tsp.vnfm.exact_threshold = static_cast<int>(get_integer(*it, "experiment.exact_threshold"));
  if (auto it = root.find("oracle_budget"); it != root.end()) {
    require_object(*it, "experiment.oracle_budget");
    reject_unknown_keys(*it, "experiment.oracle_budget", {"max_nodes", "time_limit_s"});
    if (auto f = it->find("max_nodes"); f != it->end())
      cfg.oracle_budget.max_nodes = static_cast<std::uint64_t>(get_integer(*f, "max_nodes"));
    if (auto f = it->find("time_limit_s"); f != it->end())
      cfg.oracle_budget.time_limit_s = get_number(*f, "time_limit_s");
  }
  if (auto it = root.find("record_runtime"); it != root.end()) {
    if (!it->is_boolean()) parse_fail("experiment.record_runtime: expected a boolean");
    cfg.record_runtime = it->get<bool>();
  }
  if (auto it = root.find("solutions_dir"); it != root.end())
    cfg.solutions_dir = resolve(get_string(*it, "experiment.solutions_dir"));

  if (cfg.vnf_counts.empty()) parse_fail("experiment.vnf_counts: sweep is empty");
  for (int c : cfg.vnf_counts)
    if (c < 0) parse_fail("experiment.vnf_counts: counts must be nonnegative");
  if (cfg.algorithms.empty()) parse_fail("experiment.algorithms: nothing to run");
  if (cfg.runs_per_point < 1) parse_fail("experiment.runs_per_point: must be at least 1");
  return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  return parse_experiment_config(detail::read_text_file(path), path.parent_path());
}

namespace {

std::uint64_t point_seed(std::uint64_t base_seed, int vnf_count) {
  // splitmix64 finalizer over (base, |V|).
  std::uint64_t z = base_seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(vnf_count + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

ProblemInstance base_instance(const ExperimentConfig& config) {
  if (config.instance_path) return load_problem(*config.instance_path);
  return generate_instance(*config.generator);
}

std::string status_of(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kNoFeasiblePlan: return "no_feasible_plan";
    case ErrorCode::kInfeasibleDomain: return "infeasible_domain";
    default: return "error";
  }
}

void fill_counts(RunRecord& row, const Solution& s) {
  row.objective = objective_value(s);
  row.nfvo_count = s.nfvo_count();
  row.vnfm_count = s.vnfm_count();
}

std::string fixed2(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

}  // namespace

ProblemInstance sweep_instance(const ExperimentConfig& config, const ProblemInstance& base,
                               int vnf_count) {
  if (config.draw == VnfDraw::kRedraw)
    return with_uniform_vnfs(base, vnf_count, config.vnfm_delay_bound_ms,
                             config.nfvo_vnfm_delay_bound_ms,
                             point_seed(config.base_seed, vnf_count));
  const int largest = *std::max_element(config.vnf_counts.begin(), config.vnf_counts.end());
  auto all = with_uniform_vnfs(base, largest, config.vnfm_delay_bound_ms,
                               config.nfvo_vnfm_delay_bound_ms, point_seed(config.base_seed, -1));
  std::vector<VnfInstance> first(all.vnfs().begin(), all.vnfs().begin() + vnf_count);
  return base.with_vnfs(std::move(first));
}

std::vector<RunRecord> run_experiment(const ExperimentConfig& config) {
  const ProblemInstance base = base_instance(config);
  if (config.solutions_dir) std::filesystem::create_directories(*config.solutions_dir);
  std::vector<int> counts = config.vnf_counts;
  std::sort(counts.begin(), counts.end());
  counts.erase(std::unique(counts.begin(), counts.end()), counts.end());
  std::vector<Algorithm> algorithms = config.algorithms;
  std::sort(algorithms.begin(), algorithms.end(),
            [](Algorithm a, Algorithm b) { return to_string(a) < to_string(b); });
  algorithms.erase(std::unique(algorithms.begin(), algorithms.end()), algorithms.end());

  std::vector<RunRecord> rows;
  for (int vnf_count : counts) {
    const ProblemInstance instance = sweep_instance(config, base, vnf_count);
    for (Algorithm algorithm : algorithms) {
      const int runs = algorithm == Algorithm::kTsp ? config.runs_per_point : 1;
      for (int run = 0; run < runs; ++run) {
        RunRecord row;
        row.instance = config.instance_name;
        row.pops = instance.pop_count();
        row.vnfs = vnf_count;
        row.algorithm = algorithm;
        row.seed = config.base_seed + static_cast<std::uint64_t>(run);
        std::optional<Solution> solution;
        SolutionMetadata meta;
        const auto t0 = std::chrono::steady_clock::now();
        try {
          if (algorithm == Algorithm::kTsp) {
            TspParams params = config.tsp;
            params.tabu.seed = row.seed;
            TspStats stats;
            solution = two_step_place(instance, params, &stats);
            row.iterations = static_cast<std::uint64_t>(stats.iterations);
            row.status = "ok";
            meta.iterations = stats.iterations;
          } else {
            const OracleResult r = solve_exact(instance, config.oracle_budget);
            row.iterations = r.nodes_explored;
            row.status = to_string(r.status);
            solution = r.solution;
            meta.status = row.status;
            meta.nodes_explored = r.nodes_explored;
          }
        } catch (const Error& e) {
          row.status = status_of(e);
        }
        const std::chrono::duration<double, std::milli> dt = std::chrono::steady_clock::now() - t0;
        row.runtime_ms = config.record_runtime ? dt.count() : 0.0;
        if (solution) {
          fill_counts(row, *solution);
          if (config.solutions_dir) {
            const auto name = config.instance_name + "_v" + std::to_string(vnf_count) + "_" +
                              to_string(algorithm) + "_s" + std::to_string(row.seed) + ".json";
            save_solution(*config.solutions_dir / name, *solution, meta);
          }
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

std::string records_to_csv(const ExperimentConfig& config, const std::vector<RunRecord>& rows) {
  (void)config;
  std::vector<const RunRecord*> sorted;
  for (const auto& r : rows) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(), [](const RunRecord* a, const RunRecord* b) {
    return std::make_tuple(a->vnfs, to_string(a->algorithm), a->seed) <
           std::make_tuple(b->vnfs, to_string(b->algorithm), b->seed);
  });

  std::ostringstream os;
  os << kCsvHeader << "\n";
  auto opt = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string(); };
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    double sum_obj = 0, sum_nfvo = 0, sum_vnfm = 0, sum_iter = 0, sum_rt = 0;
    int ok = 0;
    while (j < sorted.size() && sorted[j]->vnfs == sorted[i]->vnfs &&
           sorted[j]->algorithm == sorted[i]->algorithm) {
      const auto& r = *sorted[j];
      os << r.instance << ',' << r.pops << ',' << r.vnfs << ',' << to_string(r.algorithm) << ','
         << r.seed << ',' << opt(r.objective) << ',' << opt(r.nfvo_count) << ','
         << opt(r.vnfm_count) << ',' << r.iterations << ',' << fixed2(r.runtime_ms) << ','
         << r.status << "\n";
      if (r.success() && r.objective) {
        ++ok;
        sum_obj += *r.objective;
        sum_nfvo += *r.nfvo_count;
        sum_vnfm += *r.vnfm_count;
        sum_iter += static_cast<double>(r.iterations);
        sum_rt += r.runtime_ms;
      }
      ++j;
    }
    const auto& head = *sorted[i];
    os << head.instance << ',' << head.pops << ',' << head.vnfs << ','
       << to_string(head.algorithm) << ",mean,";
    if (ok > 0) {
      os << fixed2(sum_obj / ok) << ',' << fixed2(sum_nfvo / ok) << ',' << fixed2(sum_vnfm / ok)
         << ',' << fixed2(sum_iter / ok) << ',' << fixed2(sum_rt / ok);
    } else {
      os << ",,,,";
    }
    os << ",mean(n=" << ok << ")\n";
    i = j;
  }
  return os.str();
}

std::vector<RunRecord> run_experiment_to_csv(const ExperimentConfig& config) {
  auto rows = run_experiment(config);
  detail::write_text_file(config.output, records_to_csv(config, rows));
  return rows;
}

}  // namespace nfvplace
