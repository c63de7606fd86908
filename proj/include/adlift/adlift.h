/* Copyright 2026 The Adlift Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* Causal ad-lift measurement engine: C API.
 *
 * All objects are opaque handles created and destroyed by this library.
 * Functions return ADLIFT_OK on success; on failure they return an error
 * code and adlift_last_error() carries a message for the calling thread.
 * Strings returned through char** out-parameters are owned by the caller
 * and must be released with adlift_string_free().
 */

#ifndef ADLIFT_H_
#define ADLIFT_H_

#include <stdint.h>

#if defined(_WIN32)
#  define ADLIFT_API
#elif defined(ADLIFT_BUILDING_SHARED)
#  define ADLIFT_API __attribute__((visibility("default")))
#else
#  define ADLIFT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum adlift_status {
  ADLIFT_OK = 0,
  ADLIFT_ERR_NULL_ARG = 1,
  ADLIFT_ERR_IO = 2,
  ADLIFT_ERR_PARSE = 3,
  ADLIFT_ERR_CONFIG = 4,
  ADLIFT_ERR_VALIDATION = 5,   /* invariant violations, mixed arms, bad tags */
  ADLIFT_ERR_DEGENERATE = 6,   /* empty populations, undefined estimates */
  ADLIFT_ERR_DOMAIN = 7,       /* formula inputs outside their domain */
  ADLIFT_ERR_INTERNAL = 8
} adlift_status;

ADLIFT_API const char* adlift_version(void);
ADLIFT_API const char* adlift_status_name(adlift_status status);

/* Message for the most recent failing call on this thread ("" if none). */
ADLIFT_API const char* adlift_last_error(void);

/* ---- configuration ----------------------------------------------------- */

/* Flat key=value campaign/sampler/simulator settings; the same keys as the
 * config file format. Unknown keys are preserved but ignored. */
typedef struct adlift_config adlift_config;

ADLIFT_API adlift_config* adlift_config_new(void);
ADLIFT_API adlift_status adlift_config_load_file(adlift_config* cfg, const char* path);
ADLIFT_API adlift_status adlift_config_set(adlift_config* cfg, const char* key,
                                           const char* value);
ADLIFT_API void adlift_config_free(adlift_config* cfg);

/* ---- datasets ---------------------------------------------------------- */

/* Loaded log records plus an optional identifier graph. */
typedef struct adlift_dataset adlift_dataset;

ADLIFT_API adlift_dataset* adlift_dataset_new(void);
ADLIFT_API adlift_status adlift_dataset_load_impressions(adlift_dataset* ds,
                                                         const char* jsonl_path);
ADLIFT_API adlift_status adlift_dataset_load_events(adlift_dataset* ds,
                                                    const char* jsonl_path);
ADLIFT_API adlift_status adlift_dataset_load_bidopps(adlift_dataset* ds,
                                                     const char* jsonl_path);
ADLIFT_API adlift_status adlift_dataset_load_cid_graph(adlift_dataset* ds,
                                                       const char* csv_path);
ADLIFT_API void adlift_dataset_free(adlift_dataset* ds);

/* ---- count tables ------------------------------------------------------ */

typedef struct adlift_counts adlift_counts;

ADLIFT_API adlift_status adlift_counts_from_json(const char* json_text,
                                                 adlift_counts** out);
/* Validation failures list every violated invariant in adlift_last_error(). */
ADLIFT_API adlift_status adlift_counts_validate(const adlift_counts* counts);
ADLIFT_API adlift_status adlift_counts_to_json(const adlift_counts* counts, char** out);
ADLIFT_API void adlift_counts_free(adlift_counts* counts);

/* ---- analysis ---------------------------------------------------------- */

typedef struct adlift_report adlift_report;

/* Full pipeline: classify units, attribute conversions inside the PV
 * window, estimate, and (unless gibbs.enabled=false) sample the posterior. */
ADLIFT_API adlift_status adlift_analyze(const adlift_config* cfg,
                                        const adlift_dataset* ds,
                                        adlift_report** out);

/* Same, starting from a prepared count table. */
ADLIFT_API adlift_status adlift_analyze_counts(const adlift_config* cfg,
                                               const adlift_counts* counts,
                                               adlift_report** out);

ADLIFT_API adlift_status adlift_report_json(const adlift_report* report, char** out);
/* One text row in the reference table layout; include_header prepends the
 * column names line. */
ADLIFT_API adlift_status adlift_report_table(const adlift_report* report,
                                             int include_header, char** out);
ADLIFT_API void adlift_report_free(adlift_report* report);

/* ---- posterior sampling only ------------------------------------------ */

typedef struct adlift_gibbs_result adlift_gibbs_result;

ADLIFT_API adlift_status adlift_gibbs_run(const adlift_config* cfg,
                                          const adlift_counts* counts,
                                          adlift_gibbs_result** out);
ADLIFT_API adlift_status adlift_gibbs_result_json(const adlift_gibbs_result* result,
                                                  char** out);
ADLIFT_API adlift_status adlift_gibbs_result_draws_csv(const adlift_gibbs_result* result,
                                                       char** out);
ADLIFT_API void adlift_gibbs_result_free(adlift_gibbs_result* result);

/* ---- simulation -------------------------------------------------------- */

/* Writes bidopps.jsonl, impressions.jsonl, events.jsonl, truth.csv,
 * truth_summary.json (and graph.csv for multi-device populations) under
 * out_dir; returns the truth summary document. */
ADLIFT_API adlift_status adlift_simulate(const adlift_config* cfg, const char* out_dir,
                                         char** summary_json);

/* ---- deterministic assignment ------------------------------------------ */

/* Hash of a userID reduced to [0, 10^digits). */
ADLIFT_API adlift_status adlift_hash_digits(const char* user_id, int digits,
                                            const char* salt, uint64_t* out);
/* *out_is_control = 1 iff the userID falls in the holdout band. */
ADLIFT_API adlift_status adlift_assign(const char* user_id, double holdout_fraction,
                                       int digits, const char* salt,
                                       int* out_is_control);

/* ---- contamination calculators ----------------------------------------- */

/* Device-level lift under the k-devices-per-consumer contamination model:
 * a * p^(k-1) / (1 + a - a * p^(k-1)). */
ADLIFT_API adlift_status adlift_diluted_atl(double true_lift, double holdout,
                                            int devices_per_consumer, double* out);
/* Control-vs-Test over-representation of two-device consumers:
 * (2 - p) / (1 + p). */
ADLIFT_API adlift_status adlift_multidevice_skew(double holdout, double* out);

ADLIFT_API void adlift_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* ADLIFT_H_ */
