// Copyright 2026 The typed-pa Authors
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

/* C interface to libtypedpa. Every function returns a tpa_status; on failure
 * tpa_last_error() describes the problem (per thread, valid until the next
 * call on that thread). Handles are opaque and owned by the caller. Strings
 * are returned through (buf, capacity, needed): *needed receives the full
 * length including the terminator, and buf may be NULL to query it. */

#ifndef TYPEDPA_TYPEDPA_H_
#define TYPEDPA_TYPEDPA_H_

#include <stddef.h>
#include <stdint.h>

#if defined(TYPEDPA_BUILDING_LIBRARY)
#define TPA_API __attribute__((visibility("default")))
#else
#define TPA_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tpa_status {
  TPA_OK = 0,
  TPA_ERR_INVALID_ARGUMENT = 1,
  TPA_ERR_IO = 2,
  TPA_ERR_DOMAIN = 3,
  TPA_ERR_BUFFER_TOO_SMALL = 4,
  TPA_ERR_INTERNAL = 99
} tpa_status;

typedef struct tpa_rng tpa_rng;
typedef struct tpa_rule tpa_rule;
typedef struct tpa_graph tpa_graph;
typedef struct tpa_config tpa_config;

TPA_API const char* tpa_version(void);
TPA_API const char* tpa_last_error(void);

/* Random streams: stream seed = master_seed XOR run. */
TPA_API tpa_status tpa_rng_create(uint64_t master_seed, uint64_t run,
                                  tpa_rng** out);
TPA_API void tpa_rng_destroy(tpa_rng* rng);
TPA_API tpa_status tpa_rng_next(tpa_rng* rng, uint64_t* out);
TPA_API tpa_status tpa_rng_uniform(tpa_rng* rng, double* out);

/* Type rules. kind: "rps", "linear", "uniform_visible". */
TPA_API tpa_status tpa_rule_create(const char* kind, size_t num_types,
                                   uint32_t m, tpa_rule** out);
TPA_API tpa_status tpa_rule_load_table(const char* path, tpa_rule** out);
TPA_API void tpa_rule_destroy(tpa_rule* rule);
TPA_API size_t tpa_rule_num_types(const tpa_rule* rule);
TPA_API uint32_t tpa_rule_m(const tpa_rule* rule);
/* out must hold num_types doubles. */
TPA_API tpa_status tpa_rule_assign_distribution(const tpa_rule* rule,
                                                const uint32_t* u, size_t len,
                                                double* out);
TPA_API tpa_status tpa_rule_sample_type(const tpa_rule* rule,
                                        const uint32_t* u, size_t len,
                                        tpa_rng* rng, uint32_t* out);

/* Growing graphs. start: "k3", "k6" or an edge-list file. */
TPA_API tpa_status tpa_graph_create(const char* start, double alpha,
                                    tpa_graph** out);
TPA_API void tpa_graph_destroy(tpa_graph* graph);
TPA_API size_t tpa_graph_num_types(const tpa_graph* graph);
TPA_API uint64_t tpa_graph_num_vertices(const tpa_graph* graph);
TPA_API uint64_t tpa_graph_num_edges(const tpa_graph* graph);
TPA_API double tpa_graph_gamma(const tpa_graph* graph);
/* neighbor_counts (may be NULL) receives num_types counts. */
TPA_API tpa_status tpa_graph_add_vertex(tpa_graph* graph,
                                        const tpa_rule* rule, tpa_rng* rng,
                                        uint32_t* new_type,
                                        uint32_t* neighbor_counts);
TPA_API tpa_status tpa_graph_shares(const tpa_graph* graph, double* out,
                                    size_t len);
TPA_API tpa_status tpa_graph_type_edge_ends(const tpa_graph* graph,
                                            uint64_t* out, size_t len);
TPA_API tpa_status tpa_graph_check_invariants(const tpa_graph* graph);

/* The replicator field on the 2-simplex. */
TPA_API tpa_status tpa_field_eval(const double p[3], double out[3]);
TPA_API tpa_status tpa_field_rk4_step(const double p[3], double dt,
                                      double out[3]);
/* re[2], im[2]: eigenvalues of the chart Jacobian at the center. */
TPA_API tpa_status tpa_field_center_eigs(double re[2], double im[2]);
/* xyz = level. points may be NULL; it receives 3 * (resolution + 1) doubles
 * (closed polyline). */
TPA_API tpa_status tpa_field_level_curve(double level, size_t resolution,
                                         double* arc_length, double* period,
                                         double* points);
TPA_API tpa_status tpa_field_circuit_ratio(double level, double* out);

/* Oracles. */
TPA_API tpa_status tpa_expected_m_next(double m_now, double gamma,
                                       double* out);
TPA_API tpa_status tpa_expected_m_next_affine(double m_now, double gamma,
                                              double alpha, double* out);
TPA_API tpa_status tpa_expected_product_enum(const double* shares, size_t len,
                                             double gamma,
                                             const tpa_rule* rule,
                                             double alpha, double* out);
TPA_API tpa_status tpa_drift_f(double y, uint32_t num_types, uint32_t m,
                               double* out);
TPA_API tpa_status tpa_p_nmk(const double* p, size_t n, uint32_t m,
                             uint32_t k, double* out);
/* outcome: 0 uniform strict max, 1 identically 0, 2 identically 1,
 * 3 violated. */
TPA_API tpa_status tpa_verify_uniform_max(uint32_t n, uint32_t m, uint32_t k,
                                          double grid_step, int* outcome,
                                          double* margin);

/* Experiment configuration (see config.hpp for keys). */
TPA_API tpa_status tpa_config_create(tpa_config** out);
TPA_API void tpa_config_destroy(tpa_config* cfg);
TPA_API tpa_status tpa_config_set(tpa_config* cfg, const char* key,
                                  const char* value);
TPA_API tpa_status tpa_config_load(tpa_config* cfg, const char* path);
TPA_API tpa_status tpa_config_validate(const tpa_config* cfg);
TPA_API tpa_status tpa_config_canonical(const tpa_config* cfg, char* buf,
                                        size_t capacity, size_t* needed);

typedef struct tpa_run_summary {
  double final_product;
  double product_range; /* over the last decade [n_max / 10, n_max] */
  double dtheta;
  int circuits;
  size_t theta_flags;
} tpa_run_summary;

/* One run of cfg with run index `seed`; writes the trajectory CSV to
 * csv_path unless it is NULL. */
TPA_API tpa_status tpa_simulate(const tpa_config* cfg, uint64_t seed,
                                const char* csv_path, tpa_run_summary* out);
/* Full fan-out into the configured output directory. */
TPA_API tpa_status tpa_run_experiment(const tpa_config* cfg);
/* "fig_dist", "fig_circling", "trajectories"; defaults for the named
 * experiment are applied first, then every key set on cfg. */
TPA_API tpa_status tpa_run_named_experiment(const char* name,
                                            const tpa_config* cfg);
/* level27 values in (0, 1); CSV text for contours and the level summary. */
TPA_API tpa_status tpa_field_report(const double* levels27, size_t count,
                                    size_t resolution, const char* dir);
TPA_API tpa_status tpa_verify_manifest(const char* path, int* ok);

/* format: 0 JSON, 1 CSV (check_name,instance,lhs,rhs,abs_err). */
TPA_API tpa_status tpa_check_suite(const char* name, uint64_t seed,
                                   int format, char* buf, size_t capacity,
                                   size_t* needed, size_t* failures);

#ifdef __cplusplus
}
#endif

#endif /* TYPEDPA_TYPEDPA_H_ */
