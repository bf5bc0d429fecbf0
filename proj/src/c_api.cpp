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

#include "nfvplace/nfvplace.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <optional>
#include <sstream>
#include <string>

#include "json_util.hpp"
#include "nfvplace/error.hpp"
#include "nfvplace/exact_oracle.hpp"
#include "nfvplace/harness.hpp"
#include "nfvplace/ilp_model.hpp"
#include "nfvplace/solution_io.hpp"
#include "nfvplace/topology.hpp"
#include "nfvplace/vnfm_place.hpp"

struct nfvp_instance {
  nfvplace::ProblemInstance value;
};

struct nfvp_solution {
  nfvplace::Solution value;
  nfvplace::SolutionMetadata metadata;
};

namespace {

thread_local std::string g_last_error;

nfvp_status status_of(nfvplace::ErrorCode code) {
  using nfvplace::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument: return NFVP_ERR_INVALID_ARGUMENT;
    case ErrorCode::kParse: return NFVP_ERR_PARSE;
    case ErrorCode::kValidation: return NFVP_ERR_VALIDATION;
    case ErrorCode::kIo: return NFVP_ERR_IO;
    case ErrorCode::kOutOfRange: return NFVP_ERR_OUT_OF_RANGE;
    case ErrorCode::kNoFeasiblePlan: return NFVP_ERR_NO_FEASIBLE_PLAN;
    case ErrorCode::kInfeasibleDomain: return NFVP_ERR_INFEASIBLE_DOMAIN;
  }
  return NFVP_ERR_INTERNAL;
}

nfvp_status fail(nfvp_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
nfvp_status guarded(F&& body) {
  g_last_error.clear();
  try {
    return body();
  } catch (const nfvplace::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(NFVP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(NFVP_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(NFVP_ERR_INTERNAL, "unknown error");
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

#define NFVP_REQUIRE(cond, what)                                         \
  do {                                                                   \
    if (!(cond)) return fail(NFVP_ERR_INVALID_ARGUMENT, what " is NULL"); \
  } while (0)

nfvplace::GeneratorConfig to_cpp(const nfvp_generator_config& c) {
  nfvplace::GeneratorConfig g;
  g.pop_count = c.pop_count;
  g.vnf_count = c.vnf_count;
  g.area_side_km = c.area_side_km;
  g.delay_per_km = c.delay_per_km;
  g.delay_jitter_fraction = c.delay_jitter_fraction;
  g.vnfm_delay_bound_ms = c.vnfm_delay_bound_ms;
  g.nfvo_vnfm_delay_bound_ms = c.nfvo_vnfm_delay_bound_ms;
  g.nfvo_capacity = c.nfvo_capacity;
  g.vnfm_capacity = c.vnfm_capacity;
  g.gso_nfvo_delay_bound_ms = c.gso_nfvo_delay_bound_ms;
  g.nfvo_vim_delay_bound_ms = c.nfvo_vim_delay_bound_ms;
  g.seed = c.seed;
  return g;
}

void from_cpp(const nfvplace::GeneratorConfig& g, nfvp_generator_config& c) {
  c.pop_count = g.pop_count;
  c.vnf_count = g.vnf_count;
  c.area_side_km = g.area_side_km;
  c.delay_per_km = g.delay_per_km;
  c.delay_jitter_fraction = g.delay_jitter_fraction;
  c.vnfm_delay_bound_ms = g.vnfm_delay_bound_ms;
  c.nfvo_vnfm_delay_bound_ms = g.nfvo_vnfm_delay_bound_ms;
  c.nfvo_capacity = g.nfvo_capacity;
  c.vnfm_capacity = g.vnfm_capacity;
  c.gso_nfvo_delay_bound_ms = g.gso_nfvo_delay_bound_ms;
  c.nfvo_vim_delay_bound_ms = g.nfvo_vim_delay_bound_ms;
  c.seed = g.seed;
}

}  // namespace

extern "C" {

const char* nfvp_status_string(nfvp_status status) {
  switch (status) {
    case NFVP_OK: return "ok";
    case NFVP_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case NFVP_ERR_PARSE: return "parse_error";
    case NFVP_ERR_VALIDATION: return "validation_error";
    case NFVP_ERR_IO: return "io_error";
    case NFVP_ERR_OUT_OF_RANGE: return "out_of_range";
    case NFVP_ERR_NO_FEASIBLE_PLAN: return "no_feasible_plan";
    case NFVP_ERR_INFEASIBLE_DOMAIN: return "infeasible_domain";
    case NFVP_ERR_BUDGET_EXCEEDED: return "budget_exceeded";
    case NFVP_ERR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

const char* nfvp_last_error_message(void) { return g_last_error.c_str(); }

void nfvp_string_free(char* s) { std::free(s); }

void nfvp_generator_config_default(nfvp_generator_config* config) {
  if (config != nullptr) from_cpp(nfvplace::GeneratorConfig{}, *config);
}

nfvp_status nfvp_generator_config_from_json(const char* json, nfvp_generator_config* config) {
  NFVP_REQUIRE(json, "json");
  NFVP_REQUIRE(config, "config");
  return guarded([&] {
    from_cpp(nfvplace::parse_generator_config(json), *config);
    return NFVP_OK;
  });
}

nfvp_status nfvp_instance_generate(const nfvp_generator_config* config, nfvp_instance** out) {
  NFVP_REQUIRE(config, "config");
  NFVP_REQUIRE(out, "out");
  *out = nullptr;
  return guarded([&] {
    *out = new nfvp_instance{nfvplace::generate_instance(to_cpp(*config))};
    return NFVP_OK;
  });
}

nfvp_status nfvp_instance_load(const char* path, nfvp_instance** out) {
  NFVP_REQUIRE(path, "path");
  NFVP_REQUIRE(out, "out");
  *out = nullptr;
  return guarded([&] {
    *out = new nfvp_instance{nfvplace::load_problem(path)};
    return NFVP_OK;
  });
}

nfvp_status nfvp_instance_from_json(const char* json, nfvp_instance** out) {
  NFVP_REQUIRE(json, "json");
  NFVP_REQUIRE(out, "out");
  *out = nullptr;
  return guarded([&] {
    *out = new nfvp_instance{nfvplace::ProblemInstance(nfvplace::parse_instance(json))};
    return NFVP_OK;
  });
}

nfvp_status nfvp_instance_save(const nfvp_instance* instance, const char* path) {
  NFVP_REQUIRE(instance, "instance");
  NFVP_REQUIRE(path, "path");
  return guarded([&] {
    nfvplace::save_problem(instance->value, path);
    return NFVP_OK;
  });
}

nfvp_status nfvp_instance_to_json(const nfvp_instance* instance, char** json) {
  NFVP_REQUIRE(instance, "instance");
  NFVP_REQUIRE(json, "json");
  *json = nullptr;
  return guarded([&] {
    *json = dup_string(nfvplace::instance_to_json(instance->value.data()));
    return NFVP_OK;
  });
}

int nfvp_instance_pop_count(const nfvp_instance* instance) {
  return instance != nullptr ? instance->value.pop_count() : -1;
}

int nfvp_instance_vnf_count(const nfvp_instance* instance) {
  return instance != nullptr ? instance->value.vnf_count() : -1;
}

int nfvp_instance_lower_bound(const nfvp_instance* instance) {
  return instance != nullptr ? nfvplace::capacity_lower_bound(instance->value) : -1;
}

void nfvp_instance_free(nfvp_instance* instance) { delete instance; }

nfvp_status nfvp_validate_file(const char* path, size_t* violation_count, char** report) {
  NFVP_REQUIRE(path, "path");
  NFVP_REQUIRE(violation_count, "violation_count");
  if (report != nullptr) *report = nullptr;
  return guarded([&] {
    const auto result = nfvplace::validate_instance(nfvplace::load_instance_data(path));
    *violation_count = result.violations.size();
    if (report != nullptr) {
      std::string text;
      for (const auto& v : result.violations) text += v + "\n";
      *report = dup_string(text);
    }
    return NFVP_OK;
  });
}

void nfvp_tsp_params_default(nfvp_tsp_params* params) {
  if (params == nullptr) return;
  const nfvplace::TspParams d;
  params->stop_patience = d.tabu.stop_patience;
  params->tabu_tenure = d.tabu.tabu_tenure;
  params->neighborhood_samples = d.tabu.neighborhood_samples;
  params->seed = d.tabu.seed;
  params->exact_threshold = d.vnfm.exact_threshold;
  params->vnfm_mode = NFVP_VNFM_AUTO;
}

nfvp_status nfvp_solve_tsp(const nfvp_instance* instance, const nfvp_tsp_params* params,
                           nfvp_solution** out, nfvp_tsp_stats* stats) {
  NFVP_REQUIRE(instance, "instance");
  NFVP_REQUIRE(out, "out");
  *out = nullptr;
  return guarded([&] {
    nfvplace::TspParams p;
    if (params != nullptr) {
      if (params->stop_patience < 0 || params->tabu_tenure < 0 ||
          params->neighborhood_samples < 0 || params->exact_threshold < 0)
        return fail(NFVP_ERR_INVALID_ARGUMENT, "tsp params must be nonnegative");
      p.tabu.stop_patience = params->stop_patience;
      p.tabu.tabu_tenure = params->tabu_tenure;
      p.tabu.neighborhood_samples = params->neighborhood_samples;
      p.tabu.seed = params->seed;
      p.vnfm.exact_threshold = params->exact_threshold;
      switch (params->vnfm_mode) {
        case NFVP_VNFM_AUTO: p.vnfm.mode = nfvplace::PlacementMode::kAuto; break;
        case NFVP_VNFM_EXACT: p.vnfm.mode = nfvplace::PlacementMode::kExact; break;
        case NFVP_VNFM_GREEDY: p.vnfm.mode = nfvplace::PlacementMode::kGreedy; break;
        default: return fail(NFVP_ERR_INVALID_ARGUMENT, "unknown vnfm_mode");
      }
    }
    nfvplace::TspStats s;
    auto solution = nfvplace::two_step_place(instance->value, p, &s);
    if (stats != nullptr) {
      stats->iterations = s.iterations;
      stats->last_improvement = s.last_improvement;
    }
    nfvplace::SolutionMetadata meta;
    meta.iterations = s.iterations;
    *out = new nfvp_solution{std::move(solution), meta};
    return NFVP_OK;
  });
}

void nfvp_oracle_budget_default(nfvp_oracle_budget* budget) {
  if (budget == nullptr) return;
  const nfvplace::OracleBudget d;
  budget->max_nodes = d.max_nodes;
  budget->time_limit_s = d.time_limit_s;
}

nfvp_status nfvp_solve_exact(const nfvp_instance* instance, const nfvp_oracle_budget* budget,
                             nfvp_solution** out, nfvp_exact_stats* stats) {
  NFVP_REQUIRE(instance, "instance");
  NFVP_REQUIRE(out, "out");
  *out = nullptr;
  return guarded([&] {
    nfvplace::OracleBudget b;
    if (budget != nullptr) {
      if (budget->max_nodes == 0 || !(budget->time_limit_s > 0.0))
        return fail(NFVP_ERR_INVALID_ARGUMENT, "oracle budget must be positive");
      b.max_nodes = budget->max_nodes;
      b.time_limit_s = budget->time_limit_s;
    }
    const auto result = nfvplace::solve_exact(instance->value, b);
    if (stats != nullptr) stats->nodes_explored = result.nodes_explored;
    if (result.solution) {
      nfvplace::SolutionMetadata meta;
      meta.status = nfvplace::to_string(result.status);
      meta.nodes_explored = result.nodes_explored;
      *out = new nfvp_solution{*result.solution, meta};
    }
    switch (result.status) {
      case nfvplace::OracleStatus::kOptimal: return NFVP_OK;
      case nfvplace::OracleStatus::kInfeasible:
        return fail(NFVP_ERR_NO_FEASIBLE_PLAN, "instance has no feasible placement");
      case nfvplace::OracleStatus::kBudgetExceeded: break;
    }
    return fail(NFVP_ERR_BUDGET_EXCEEDED, "exact search budget exhausted after " +
                                              std::to_string(result.nodes_explored) +
                                              " nodes");
  });
}

nfvp_status nfvp_solution_load(const char* path, nfvp_solution** out) {
  NFVP_REQUIRE(path, "path");
  NFVP_REQUIRE(out, "out");
  *out = nullptr;
  return guarded([&] {
    auto file = nfvplace::load_solution(path);
    *out = new nfvp_solution{std::move(file.solution), std::move(file.metadata)};
    return NFVP_OK;
  });
}

nfvp_status nfvp_solution_from_json(const char* json, nfvp_solution** out) {
  NFVP_REQUIRE(json, "json");
  NFVP_REQUIRE(out, "out");
  *out = nullptr;
  return guarded([&] {
    auto file = nfvplace::parse_solution(json);
    *out = new nfvp_solution{std::move(file.solution), std::move(file.metadata)};
    return NFVP_OK;
  });
}

nfvp_status nfvp_solution_save(const nfvp_solution* solution, const char* path) {
  NFVP_REQUIRE(solution, "solution");
  NFVP_REQUIRE(path, "path");
  return guarded([&] {
    nfvplace::save_solution(path, solution->value, solution->metadata);
    return NFVP_OK;
  });
}

nfvp_status nfvp_solution_to_json(const nfvp_solution* solution, char** json) {
  NFVP_REQUIRE(solution, "solution");
  NFVP_REQUIRE(json, "json");
  *json = nullptr;
  return guarded([&] {
    *json = dup_string(nfvplace::solution_to_json(solution->value, solution->metadata));
    return NFVP_OK;
  });
}

int nfvp_solution_objective(const nfvp_solution* solution) {
  return solution != nullptr ? nfvplace::objective_value(solution->value) : -1;
}

int nfvp_solution_nfvo_count(const nfvp_solution* solution) {
  return solution != nullptr ? solution->value.nfvo_count() : -1;
}

int nfvp_solution_vnfm_count(const nfvp_solution* solution) {
  return solution != nullptr ? solution->value.vnfm_count() : -1;
}

void nfvp_solution_free(nfvp_solution* solution) { delete solution; }

nfvp_status nfvp_check(const nfvp_instance* instance, const nfvp_solution* solution,
                       size_t* violation_count, char** report_json, char** report_text) {
  NFVP_REQUIRE(instance, "instance");
  NFVP_REQUIRE(solution, "solution");
  NFVP_REQUIRE(violation_count, "violation_count");
  if (report_json != nullptr) *report_json = nullptr;
  if (report_text != nullptr) *report_text = nullptr;
  return guarded([&] {
    const auto report = nfvplace::check_feasibility(instance->value, solution->value);
    *violation_count = report.entries.size();
    if (report_json != nullptr) *report_json = dup_string(nfvplace::report_to_json(report));
    if (report_text != nullptr) *report_text = dup_string(nfvplace::report_to_text(report));
    return NFVP_OK;
  });
}

nfvp_status nfvp_export_lp(const nfvp_instance* instance, const char* path, size_t* variables,
                           size_t* constraints) {
  NFVP_REQUIRE(instance, "instance");
  NFVP_REQUIRE(path, "path");
  return guarded([&] {
    const auto summary = nfvplace::export_lp(instance->value, path);
    if (variables != nullptr) *variables = summary.variables;
    if (constraints != nullptr) *constraints = summary.constraints;
    return NFVP_OK;
  });
}

nfvp_status nfvp_check_lp_file(const char* path, size_t* constraints, size_t* diagnostic_count,
                               char** diagnostics) {
  NFVP_REQUIRE(path, "path");
  if (diagnostics != nullptr) *diagnostics = nullptr;
  return guarded([&] {
    const auto result = nfvplace::check_lp_text(nfvplace::detail::read_text_file(path));
    if (constraints != nullptr) *constraints = result.constraints;
    if (diagnostic_count != nullptr) *diagnostic_count = result.diagnostics.size();
    if (diagnostics != nullptr) {
      std::string text;
      for (const auto& d : result.diagnostics) text += d + "\n";
      *diagnostics = dup_string(text);
    }
    return NFVP_OK;
  });
}

nfvp_status nfvp_run_experiment(const char* config_path,
                                const nfvp_experiment_overrides* overrides, size_t* rows) {
  NFVP_REQUIRE(config_path, "config_path");
  return guarded([&] {
    auto config = nfvplace::load_experiment_config(config_path);
    if (overrides != nullptr) {
      if (overrides->output_path != nullptr) config.output = overrides->output_path;
      if (overrides->solutions_dir != nullptr) config.solutions_dir = overrides->solutions_dir;
      if (overrides->base_seed != nullptr) config.base_seed = *overrides->base_seed;
    }
    const auto records = nfvplace::run_experiment_to_csv(config);
    if (rows != nullptr) *rows = records.size();
    return NFVP_OK;
  });
}

}  // extern "C"
