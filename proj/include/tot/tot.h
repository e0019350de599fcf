//
// Copyright 2026 The Test-of-Tests Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

/* C interface to the test-of-tests library.
 *
 * Every fallible call returns a tot_status; on failure a description is
 * available from tot_last_error() on the same thread until the next call.
 * Handles are opaque and owned by the caller, who releases them with the
 * matching *_free function. Output parameters are written only on success.
 */

#ifndef TOT_TOT_H_
#define TOT_TOT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(TOT_BUILDING_LIBRARY)
#define TOT_API __attribute__((visibility("default")))
#else
#define TOT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tot_status {
  TOT_OK = 0,
  TOT_INVALID_ARGUMENT = 1,
  TOT_OUT_OF_RANGE = 2,
  TOT_NOT_FOUND = 3,
  TOT_FAILED_PRECONDITION = 4,
  TOT_UNIMPLEMENTED = 5,
  TOT_INTERNAL = 6
} tot_status;

typedef enum tot_test_family {
  TOT_TEST_Z = 0,
  TOT_TEST_T = 1,
  TOT_TEST_ANOVA = 2,
  TOT_TEST_MVN_MEAN = 3
} tot_test_family;

typedef enum tot_alternative {
  TOT_ALT_GREATER = 0,
  TOT_ALT_TWO_SIDED = 1
} tot_alternative;

typedef enum tot_effect_kind {
  TOT_EFFECT_MEAN = 0,   /* standardized mean, z and t tests */
  TOT_EFFECT_ANOVA = 1,  /* eta with `groups` groups */
  TOT_EFFECT_VECTOR = 2  /* mean vector of length dim */
} tot_effect_kind;

typedef struct tot_effect {
  tot_effect_kind kind;
  double value;      /* mean, or eta for ANOVA */
  int groups;        /* ANOVA only */
  const double* mu;  /* TOT_EFFECT_VECTOR only; borrowed */
  size_t dim;
} tot_effect;

typedef struct tot_dataset tot_dataset;
typedef struct tot_test tot_test;

TOT_API const char* tot_version(void);
TOT_API const char* tot_last_error(void);

/* Name parsing shared by front ends. */
TOT_API tot_status tot_parse_test_family(const char* name, tot_test_family* out);
TOT_API tot_status tot_parse_alternative(const char* name, tot_alternative* out);

/* ---- datasets ---- */

/* rows x cols values in row-major order. groups may be NULL; otherwise each
 * entry indexes group_names (num_groups entries). */
TOT_API tot_status tot_dataset_create(const double* values, size_t rows,
                                      size_t cols, const int* groups,
                                      const char* const* group_names,
                                      size_t num_groups, tot_dataset** out);
/* Reads the CSV contract for the family: `value`, plus `group` for ANOVA,
 * or x1..xd for the multivariate mean test. */
TOT_API tot_status tot_dataset_read_csv(const char* path,
                                        tot_test_family family,
                                        tot_dataset** out);
/* path "-" writes to standard output. */
TOT_API tot_status tot_dataset_write_csv(const tot_dataset* data,
                                         tot_test_family family,
                                         const char* path);
TOT_API size_t tot_dataset_rows(const tot_dataset* data);
TOT_API size_t tot_dataset_cols(const tot_dataset* data);
TOT_API void tot_dataset_free(tot_dataset* data);

/* ---- public tests ---- */

/* groups is used by ANOVA only; alternative by the z and t tests only. */
TOT_API tot_status tot_test_create(tot_test_family family,
                                   tot_alternative alternative, int groups,
                                   tot_test** out);
/* Synthetic test whose p-value is the subset's first value; for use with
 * the p-value mixture generator. Has no power model. */
TOT_API tot_status tot_test_create_pvalue_passthrough(tot_test** out);
TOT_API void tot_test_free(tot_test* test);
TOT_API size_t tot_test_min_sample_size(const tot_test* test);
/* *available is 0 when the statistic is undefined on the data. */
TOT_API tot_status tot_test_pvalue(const tot_test* test,
                                   const tot_dataset* data, double* p,
                                   int* available);
TOT_API tot_status tot_test_power(const tot_test* test, size_t n,
                                  const tot_effect* effect, double alpha0,
                                  double* out);

/* ---- the private test ---- */

typedef struct tot_config {
  double epsilon;
  double alpha;
  size_t m;
  double alpha0;
  uint64_t seed;
} tot_config;

typedef struct tot_result {
  double z;
  double p_value;
  int reject;
  size_t subtests_available;
  size_t n;
  tot_config config;
} tot_result;

TOT_API tot_status tot_run(const tot_dataset* data, const tot_test* test,
                           const tot_config* config, tot_result* out);

/* ---- power analysis ---- */

TOT_API tot_status tot_power(double epsilon, double alpha, size_t m,
                             double alpha0, double theta, double* out);
TOT_API tot_status tot_bn_quantile(double q, size_t m, double alpha0,
                                   double epsilon, double* out);
TOT_API tot_status tot_min_m_for_power(double theta, double alpha0, double rho,
                                       double alpha, double epsilon,
                                       size_t max_m, size_t* out);
TOT_API tot_status tot_pb_power(size_t m, double p, double theta, double* out);
TOT_API double tot_randomized_response_keep_probability(double epsilon);

typedef struct tot_pb_row {
  double theta;
  double tot_power;
  double pb_power;
  double pb_raw_power;
} tot_pb_row;

/* rows may be NULL; otherwise it receives `count` entries. */
TOT_API tot_status tot_pb_dominance_check(size_t m, double alpha0,
                                          double epsilon, double alpha,
                                          const double* thetas, size_t count,
                                          int* dominates, tot_pb_row* rows);
TOT_API tot_status tot_canonne_threshold(size_t d, double epsilon,
                                         double delta, double* out);
TOT_API tot_status tot_canonne_type1_lower_bound(size_t n, size_t d,
                                                 double epsilon, double delta,
                                                 double gamma, double* out);

/* ---- optimizer ---- */

typedef struct tot_candidate {
  size_t m;
  double alpha0;
  double theta;
  double power;
} tot_candidate;

typedef struct tot_optimizer_result {
  size_t m;
  double alpha0;
  double theta;
  double achieved_power;
  int degenerate;
  int target_reached;
  int has_min_detectable;
  /* Target-power mode: index into the scale list and its value. */
  size_t min_detectable_index;
  double min_detectable_scale;
  size_t num_certificates;
} tot_optimizer_result;

/* Writes min(capacity, count) values of the m candidate set to out (may be
 * NULL) and the full count to *count. */
TOT_API tot_status tot_m_candidates(size_t n, size_t* out, size_t capacity,
                                    size_t* count);

/* certificates may be NULL; at most `capacity` entries are written and
 * num_certificates reports how many exist. */
TOT_API tot_status tot_optimize_known_effect(const tot_test* test, size_t n,
                                             const tot_effect* effect,
                                             double epsilon, double alpha,
                                             tot_optimizer_result* out,
                                             tot_candidate* certificates,
                                             size_t capacity);

/* Effect grid: base scaled by each of the ascending `scales`. */
TOT_API tot_status tot_optimize_target_power(
    const tot_test* test, size_t n, double epsilon, double alpha, double rho,
    const tot_effect* base, const double* scales, size_t num_scales,
    tot_optimizer_result* out, tot_candidate* certificates, size_t capacity);

/* count values geometric in [lo, hi]. */
TOT_API tot_status tot_geometric_grid(double lo, double hi, size_t count,
                                      double* out);

TOT_API tot_status tot_evaluate_power(const tot_test* test, size_t n,
                                      const tot_effect* effect, double epsilon,
                                      double alpha, size_t m, double alpha0,
                                      double* theta, double* power);

/* ---- simulation ---- */

typedef enum tot_generator_family {
  TOT_GEN_NORMAL = 0,
  TOT_GEN_ANOVA = 1,
  TOT_GEN_MVN = 2,
  TOT_GEN_PVALUE_MIXTURE = 3
} tot_generator_family;

typedef enum tot_engine_kind {
  TOT_ENGINE_TOT = 0,
  TOT_ENGINE_PUBLIC = 1,
  TOT_ENGINE_PB = 2
} tot_engine_kind;

TOT_API tot_status tot_parse_generator_family(const char* name,
                                              tot_generator_family* out);
TOT_API tot_status tot_parse_engine(const char* name, tot_engine_kind* out);

typedef struct tot_generator {
  tot_generator_family family;
  size_t n;
  tot_effect effect;      /* unused by the p-value mixture */
  double theta;           /* p-value mixture only */
  double mixture_alpha0;  /* p-value mixture only */
} tot_generator;

typedef struct tot_engine {
  tot_engine_kind kind;
  const tot_test* test;  /* borrowed */
  double epsilon;
  double alpha;
  size_t m;
  double alpha0;
  double pb_keep_probability;
} tot_engine;

typedef struct tot_sim_plan {
  tot_generator generator;
  tot_engine engine;
  size_t replicates;
  uint64_t seed;
  size_t threads; /* 0 = all hardware threads */
} tot_sim_plan;

typedef struct tot_sim_result {
  double estimate;
  double std_error;
  size_t rejections;
  size_t replicates;
  uint64_t seed;
} tot_sim_result;

typedef struct tot_uniformity_result {
  double statistic;
  double threshold;
  int pass;
  size_t replicates;
  uint64_t seed;
} tot_uniformity_result;

TOT_API tot_status tot_simulate(const tot_sim_plan* plan, tot_sim_result* out);
/* super_uniform != 0 checks only that p-values are not anti-conservative. */
TOT_API tot_status tot_simulate_uniformity(const tot_sim_plan* plan,
                                           int super_uniform,
                                           tot_uniformity_result* out);
TOT_API tot_status tot_generate_dataset(const tot_generator* generator,
                                        uint64_t seed, tot_dataset** out);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* TOT_TOT_H_ */
