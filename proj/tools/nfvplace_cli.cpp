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

// nfvplace command-line tool. Built only on the C interface.
//
// Exit codes: 0 success, 1 usage or input error, 2 infeasible (including a
// failed check or validation), 3 internal error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "nfvplace/nfvplace.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitInternal = 3;

int exit_code_of(nfvp_status status) {
  switch (status) {
    case NFVP_OK: return kExitOk;
    case NFVP_ERR_NO_FEASIBLE_PLAN:
    case NFVP_ERR_INFEASIBLE_DOMAIN:
    case NFVP_ERR_BUDGET_EXCEEDED: return kExitInfeasible;
    case NFVP_ERR_INTERNAL: return kExitInternal;
    default: return kExitUsage;
  }
}

// Thrown to unwind with a given exit code after printing a message.
struct Exit {
  int code;
};

void check(nfvp_status status, const std::string& context) {
  if (status == NFVP_OK) return;
  std::cerr << "nfvplace: " << context << ": " << nfvp_status_string(status) << ": "
            << nfvp_last_error_message() << "\n";
  throw Exit{exit_code_of(status)};
}

struct InstanceDeleter {
  void operator()(nfvp_instance* p) const { nfvp_instance_free(p); }
};
struct SolutionDeleter {
  void operator()(nfvp_solution* p) const { nfvp_solution_free(p); }
};
struct StringDeleter {
  void operator()(char* p) const { nfvp_string_free(p); }
};
using InstancePtr = std::unique_ptr<nfvp_instance, InstanceDeleter>;
using SolutionPtr = std::unique_ptr<nfvp_solution, SolutionDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

InstancePtr load_instance(const std::string& path) {
  nfvp_instance* raw = nullptr;
  check(nfvp_instance_load(path.c_str(), &raw), path);
  return InstancePtr(raw);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "nfvplace: cannot read " << path << "\n";
    throw Exit{kExitUsage};
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Writes a solution to `output`, or to stdout when no path was given.
void emit_solution(const nfvp_solution* solution, const std::string& output) {
  if (!output.empty()) {
    check(nfvp_solution_save(solution, output.c_str()), output);
    return;
  }
  char* raw = nullptr;
  check(nfvp_solution_to_json(solution, &raw), "solution");
  StringPtr json(raw);
  std::cout << json.get();
}

struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  std::string output;
  std::string config;
};

// Fields of a solve-tsp config file; command-line flags take precedence.
void apply_tsp_config(const std::string& path, nfvp_tsp_params& params) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(slurp(path));
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "nfvplace: " << path << ": " << e.what() << "\n";
    throw Exit{kExitUsage};
  }
  if (!root.is_object()) {
    std::cerr << "nfvplace: " << path << ": expected a JSON object\n";
    throw Exit{kExitUsage};
  }
  try {
    for (const auto& [key, value] : root.items()) {
      if (key == "stop_patience") params.stop_patience = value.get<int>();
      else if (key == "tabu_tenure") params.tabu_tenure = value.get<int>();
      else if (key == "neighborhood_samples") params.neighborhood_samples = value.get<int>();
      else if (key == "exact_threshold") params.exact_threshold = value.get<int>();
      else if (key == "seed") params.seed = value.get<std::uint64_t>();
      else if (key == "vnfm_mode") {
        const auto mode = value.get<std::string>();
        if (mode == "auto") params.vnfm_mode = NFVP_VNFM_AUTO;
        else if (mode == "exact") params.vnfm_mode = NFVP_VNFM_EXACT;
        else if (mode == "greedy") params.vnfm_mode = NFVP_VNFM_GREEDY;
        else throw std::invalid_argument("vnfm_mode: unknown mode '" + mode + "'");
      } else {
        throw std::invalid_argument("unknown key '" + key + "'");
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "nfvplace: " << path << ": " << e.what() << "\n";
    throw Exit{kExitUsage};
  }
}

int run(int argc, char** argv) {
  CLI::App app{"NFVO/VNFM placement: instance generation, solvers, checker, LP export"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions global;
  app.add_option("--seed", global.seed, "Random seed");
  app.add_option("--output,-o", global.output, "Output file (default: stdout)");
  app.add_option("--config", global.config, "JSON configuration file");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  std::optional<int> gen_pops, gen_vnfs;
  gen->add_option("--pops", gen_pops, "Number of PoPs")->check(CLI::PositiveNumber);
  gen->add_option("--vnfs", gen_vnfs, "Number of VNFs")->check(CLI::NonNegativeNumber);

  // validate
  auto* validate = app.add_subcommand("validate", "Validate an instance file");
  std::string validate_path;
  validate->add_option("instance", validate_path, "Instance file")->required();

  // solve-tsp
  auto* tsp = app.add_subcommand("solve-tsp", "Two-step placement (tabu search + VNFM placement)");
  std::string tsp_instance;
  std::optional<int> stop_patience, tenure, samples, exact_threshold;
  std::string vnfm_mode;
  tsp->add_option("instance", tsp_instance, "Instance file")->required();
  tsp->add_option("--stop-patience", stop_patience, "Non-improving iterations before stopping")
      ->check(CLI::NonNegativeNumber);
  tsp->add_option("--tenure", tenure, "Tabu tenure")->check(CLI::NonNegativeNumber);
  tsp->add_option("--samples", samples, "Sampled neighbors per iteration")
      ->check(CLI::NonNegativeNumber);
  tsp->add_option("--exact-threshold", exact_threshold,
                  "Largest domain (in VNFs) solved exactly")
      ->check(CLI::NonNegativeNumber);
  tsp->add_option("--vnfm-mode", vnfm_mode, "VNFM placement: auto, exact or greedy")
      ->check(CLI::IsMember({"auto", "exact", "greedy"}));

  // solve-exact
  auto* exact = app.add_subcommand("solve-exact", "Exact optimum for small instances");
  std::string exact_instance;
  std::optional<std::uint64_t> max_nodes;
  std::optional<double> time_limit;
  exact->add_option("instance", exact_instance, "Instance file")->required();
  exact->add_option("--max-nodes", max_nodes, "Search node budget")->check(CLI::PositiveNumber);
  exact->add_option("--time-limit", time_limit, "Time budget in seconds")
      ->check(CLI::PositiveNumber);

  // check
  auto* chk = app.add_subcommand("check", "Check a solution against every constraint");
  std::string check_instance, check_solution;
  bool check_json = false;
  chk->add_option("instance", check_instance, "Instance file")->required();
  chk->add_option("solution", check_solution, "Solution file")->required();
  chk->add_flag("--json", check_json, "Print the report as JSON");

  // export-lp
  auto* lp = app.add_subcommand("export-lp", "Write the linearized model in LP format");
  std::string lp_instance;
  bool lp_summary = false;
  lp->add_option("instance", lp_instance, "Instance file")->required();
  lp->add_flag("--summary", lp_summary, "Print variable and constraint counts");

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Run a parameter sweep and write CSV");
  std::string emit_solutions;
  experiment->add_option("--emit-solutions", emit_solutions,
                         "Directory receiving one solution file per successful run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (gen->parsed()) {
    nfvp_generator_config config;
    nfvp_generator_config_default(&config);
    if (!global.config.empty())
      check(nfvp_generator_config_from_json(slurp(global.config).c_str(), &config),
            global.config);
    if (gen_pops) config.pop_count = *gen_pops;
    if (gen_vnfs) config.vnf_count = *gen_vnfs;
    if (global.seed) config.seed = *global.seed;
    nfvp_instance* raw = nullptr;
    check(nfvp_instance_generate(&config, &raw), "gen");
    InstancePtr instance(raw);
    if (!global.output.empty()) {
      check(nfvp_instance_save(instance.get(), global.output.c_str()), global.output);
    } else {
      char* json = nullptr;
      check(nfvp_instance_to_json(instance.get(), &json), "gen");
      StringPtr owned(json);
      std::cout << owned.get();
    }
    return kExitOk;
  }

  if (validate->parsed()) {
    size_t count = 0;
    char* report = nullptr;
    check(nfvp_validate_file(validate_path.c_str(), &count, &report), validate_path);
    StringPtr owned(report);
    if (count == 0) {
      std::cout << "valid\n";
      return kExitOk;
    }
    std::cout << owned.get();
    return kExitInfeasible;
  }

  if (tsp->parsed()) {
    nfvp_tsp_params params;
    nfvp_tsp_params_default(&params);
    if (!global.config.empty()) apply_tsp_config(global.config, params);
    if (global.seed) params.seed = *global.seed;
    if (stop_patience) params.stop_patience = *stop_patience;
    if (tenure) params.tabu_tenure = *tenure;
    if (samples) params.neighborhood_samples = *samples;
    if (exact_threshold) params.exact_threshold = *exact_threshold;
    if (vnfm_mode == "auto") params.vnfm_mode = NFVP_VNFM_AUTO;
    if (vnfm_mode == "exact") params.vnfm_mode = NFVP_VNFM_EXACT;
    if (vnfm_mode == "greedy") params.vnfm_mode = NFVP_VNFM_GREEDY;
    auto instance = load_instance(tsp_instance);
    nfvp_solution* raw = nullptr;
    nfvp_tsp_stats stats{};
    check(nfvp_solve_tsp(instance.get(), &params, &raw, &stats), "solve-tsp");
    SolutionPtr solution(raw);
    emit_solution(solution.get(), global.output);
    std::cerr << "objective=" << nfvp_solution_objective(solution.get())
              << " nfvos=" << nfvp_solution_nfvo_count(solution.get())
              << " vnfms=" << nfvp_solution_vnfm_count(solution.get())
              << " iterations=" << stats.iterations << "\n";
    return kExitOk;
  }

  if (exact->parsed()) {
    nfvp_oracle_budget budget;
    nfvp_oracle_budget_default(&budget);
    if (max_nodes) budget.max_nodes = *max_nodes;
    if (time_limit) budget.time_limit_s = *time_limit;
    auto instance = load_instance(exact_instance);
    nfvp_solution* raw = nullptr;
    nfvp_exact_stats stats{};
    const nfvp_status status = nfvp_solve_exact(instance.get(), &budget, &raw, &stats);
    SolutionPtr solution(raw);
    // An incumbent found before the budget ran out is still written.
    if (solution) emit_solution(solution.get(), global.output);
    check(status, "solve-exact");
    std::cerr << "objective=" << nfvp_solution_objective(solution.get())
              << " nodes=" << stats.nodes_explored << "\n";
    return kExitOk;
  }

  if (chk->parsed()) {
    auto instance = load_instance(check_instance);
    nfvp_solution* raw = nullptr;
    check(nfvp_solution_load(check_solution.c_str(), &raw), check_solution);
    SolutionPtr solution(raw);
    size_t count = 0;
    char* json = nullptr;
    char* text = nullptr;
    check(nfvp_check(instance.get(), solution.get(), &count, &json, &text), "check");
    StringPtr owned_json(json), owned_text(text);
    const std::string report = check_json ? owned_json.get()
                                          : (count == 0 ? std::string("feasible\n")
                                                        : std::string(owned_text.get()));
    if (!global.output.empty()) {
      std::ofstream out(global.output, std::ios::binary);
      out << report;
      if (!out) {
        std::cerr << "nfvplace: cannot write " << global.output << "\n";
        return kExitUsage;
      }
    } else {
      std::cout << report;
    }
    return count == 0 ? kExitOk : kExitInfeasible;
  }

  if (lp->parsed()) {
    if (global.output.empty()) {
      std::cerr << "nfvplace: export-lp requires --output\n";
      return kExitUsage;
    }
    auto instance = load_instance(lp_instance);
    size_t variables = 0, constraints = 0;
    check(nfvp_export_lp(instance.get(), global.output.c_str(), &variables, &constraints),
          "export-lp");
    if (lp_summary) std::cout << "variables=" << variables << " constraints=" << constraints << "\n";
    return kExitOk;
  }

  if (experiment->parsed()) {
    if (global.config.empty()) {
      std::cerr << "nfvplace: experiment requires --config\n";
      return kExitUsage;
    }
    nfvp_experiment_overrides overrides{};
    std::uint64_t seed = 0;
    if (!global.output.empty()) overrides.output_path = global.output.c_str();
    if (!emit_solutions.empty()) overrides.solutions_dir = emit_solutions.c_str();
    if (global.seed) {
      seed = *global.seed;
      overrides.base_seed = &seed;
    }
    size_t rows = 0;
    check(nfvp_run_experiment(global.config.c_str(), &overrides, &rows), "experiment");
    std::cerr << "rows=" << rows << "\n";
    return kExitOk;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Exit& e) {
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "nfvplace: " << e.what() << "\n";
    return kExitInternal;
  }
}
