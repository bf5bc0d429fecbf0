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

/* C interface to the nfvplace library.
 *
 * Every function returns an nfvp_status. On failure a message describing the
 * error is available from nfvp_last_error_message() until the next call on
 * the same thread. Strings returned through char** out-parameters are owned
 * by the caller and must be released with nfvp_string_free(). Handles are
 * released with their *_free function; passing NULL to any *_free is a
 * no-op. */

#ifndef NFVPLACE_NFVPLACE_H
#define NFVPLACE_NFVPLACE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define NFVP_API __declspec(dllexport)
#else
#define NFVP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nfvp_status {
  NFVP_OK = 0,
  NFVP_ERR_INVALID_ARGUMENT = 1,
  NFVP_ERR_PARSE = 2,
  NFVP_ERR_VALIDATION = 3,
  NFVP_ERR_IO = 4,
  NFVP_ERR_OUT_OF_RANGE = 5,
  NFVP_ERR_NO_FEASIBLE_PLAN = 6,
  NFVP_ERR_INFEASIBLE_DOMAIN = 7,
  NFVP_ERR_BUDGET_EXCEEDED = 8,
  NFVP_ERR_INTERNAL = 9
} nfvp_status;

typedef struct nfvp_instance nfvp_instance;
typedef struct nfvp_solution nfvp_solution;

NFVP_API const char* nfvp_status_string(nfvp_status status);
NFVP_API const char* nfvp_last_error_message(void);
NFVP_API void nfvp_string_free(char* s);

/* ---- Instances ---------------------------------------------------------- */

typedef struct nfvp_generator_config {
  int pop_count;
  int vnf_count;
  double area_side_km;
  double delay_per_km;
  double delay_jitter_fraction;
  double vnfm_delay_bound_ms;      /* VNF <-> VNFM */
  double nfvo_vnfm_delay_bound_ms; /* NFVO <-> VNFM */
  int nfvo_capacity;
  int vnfm_capacity;
  double gso_nfvo_delay_bound_ms;
  double nfvo_vim_delay_bound_ms;
  uint64_t seed;
} nfvp_generator_config;

NFVP_API void nfvp_generator_config_default(nfvp_generator_config* config);
/* Parses a generator config JSON object; missing keys keep their defaults. */
NFVP_API nfvp_status nfvp_generator_config_from_json(const char* json,
                                                     nfvp_generator_config* config);

NFVP_API nfvp_status nfvp_instance_generate(const nfvp_generator_config* config,
                                            nfvp_instance** out);
NFVP_API nfvp_status nfvp_instance_load(const char* path, nfvp_instance** out);
NFVP_API nfvp_status nfvp_instance_from_json(const char* json, nfvp_instance** out);
NFVP_API nfvp_status nfvp_instance_save(const nfvp_instance* instance, const char* path);
NFVP_API nfvp_status nfvp_instance_to_json(const nfvp_instance* instance, char** json);
NFVP_API int nfvp_instance_pop_count(const nfvp_instance* instance);
NFVP_API int nfvp_instance_vnf_count(const nfvp_instance* instance);
/* ceil(|V|/nfvo_capacity) + ceil(|V|/vnfm_capacity). */
NFVP_API int nfvp_instance_lower_bound(const nfvp_instance* instance);
NFVP_API void nfvp_instance_free(nfvp_instance* instance);

/* Parses the file and lists every violated instance invariant, one per line.
 * Returns NFVP_OK with *violation_count > 0 when the file parses but is not
 * a valid instance. `report` may be NULL. */
NFVP_API nfvp_status nfvp_validate_file(const char* path, size_t* violation_count,
                                        char** report);

/* ---- Solvers ------------------------------------------------------------ */

typedef enum nfvp_vnfm_mode {
  NFVP_VNFM_AUTO = 0,
  NFVP_VNFM_EXACT = 1,
  NFVP_VNFM_GREEDY = 2
} nfvp_vnfm_mode;

/* Zero fields are derived from the instance: patience 4|P|, tenure
 * ceil(|P|/2), max(10, |P|) sampled neighbors. */
typedef struct nfvp_tsp_params {
  int stop_patience;
  int tabu_tenure;
  int neighborhood_samples;
  uint64_t seed;
  int exact_threshold;
  nfvp_vnfm_mode vnfm_mode;
} nfvp_tsp_params;

typedef struct nfvp_tsp_stats {
  int iterations;
  int last_improvement;
} nfvp_tsp_stats;

NFVP_API void nfvp_tsp_params_default(nfvp_tsp_params* params);

/* Two-step placement. `params` and `stats` may be NULL. */
NFVP_API nfvp_status nfvp_solve_tsp(const nfvp_instance* instance, const nfvp_tsp_params* params,
                                    nfvp_solution** out, nfvp_tsp_stats* stats);

typedef struct nfvp_oracle_budget {
  uint64_t max_nodes;
  double time_limit_s;
} nfvp_oracle_budget;

typedef struct nfvp_exact_stats {
  uint64_t nodes_explored;
} nfvp_exact_stats;

NFVP_API void nfvp_oracle_budget_default(nfvp_oracle_budget* budget);

/* Exact optimum. Returns NFVP_ERR_NO_FEASIBLE_PLAN when the instance is
 * infeasible and NFVP_ERR_BUDGET_EXCEEDED when the budget ran out; in the
 * latter case *out holds the incumbent if one was found, else NULL. */
NFVP_API nfvp_status nfvp_solve_exact(const nfvp_instance* instance,
                                      const nfvp_oracle_budget* budget, nfvp_solution** out,
                                      nfvp_exact_stats* stats);

/* ---- Solutions ---------------------------------------------------------- */

NFVP_API nfvp_status nfvp_solution_load(const char* path, nfvp_solution** out);
NFVP_API nfvp_status nfvp_solution_from_json(const char* json, nfvp_solution** out);
NFVP_API nfvp_status nfvp_solution_save(const nfvp_solution* solution, const char* path);
NFVP_API nfvp_status nfvp_solution_to_json(const nfvp_solution* solution, char** json);
NFVP_API int nfvp_solution_objective(const nfvp_solution* solution);
NFVP_API int nfvp_solution_nfvo_count(const nfvp_solution* solution);
NFVP_API int nfvp_solution_vnfm_count(const nfvp_solution* solution);
NFVP_API void nfvp_solution_free(nfvp_solution* solution);

/* Evaluates every constraint family. `report_json` (may be NULL) receives
 * {"feasible": ..., "violations": [...]}; `report_text` one line per
 * violation. */
NFVP_API nfvp_status nfvp_check(const nfvp_instance* instance, const nfvp_solution* solution,
                                size_t* violation_count, char** report_json,
                                char** report_text);

/* ---- LP export ---------------------------------------------------------- */

NFVP_API nfvp_status nfvp_export_lp(const nfvp_instance* instance, const char* path,
                                    size_t* variables, size_t* constraints);
/* Grammar check of an LP file; diagnostics are newline separated. */
NFVP_API nfvp_status nfvp_check_lp_file(const char* path, size_t* constraints,
                                        size_t* diagnostic_count, char** diagnostics);

/* ---- Experiments -------------------------------------------------------- */

typedef struct nfvp_experiment_overrides {
  const char* output_path;     /* NULL keeps the config value */
  const char* solutions_dir;   /* NULL keeps the config value */
  const uint64_t* base_seed;   /* NULL keeps the config value */
} nfvp_experiment_overrides;

/* Runs the sweep described by the config file and writes its CSV. Solver
 * failures become CSV rows, not errors. `overrides` and `rows` may be NULL. */
NFVP_API nfvp_status nfvp_run_experiment(const char* config_path,
                                         const nfvp_experiment_overrides* overrides,
                                         size_t* rows);

#ifdef __cplusplus
}
#endif

#endif /* NFVPLACE_NFVPLACE_H */
