// Copyright 2026 The smallvalues Authors
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

#ifndef SMALLVALUES_SMALLVALUES_H_
#define SMALLVALUES_SMALLVALUES_H_

/* C interface to the smallvalues engine. Every call returns an sv_status;
 * on failure sv_last_error(ctx) describes the problem. Strings returned
 * through char** outputs are owned by the caller and released with
 * sv_string_free. Numbers cross the boundary as strings in the rational
 * grammar ("12", "24+1e-13", "3/7"). */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SV_API __declspec(dllexport)
#else
#define SV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sv_status {
  SV_OK = 0,
  /* An honest negative: certification failed, verification failed, or a
   * search found nothing. */
  SV_NEGATIVE = 1,
  SV_ERR_PARSE = 2,
  SV_ERR_DOMAIN = 3,
  SV_ERR_CONFIG = 4,
  SV_ERR_INFEASIBLE = 5,
  SV_ERR_IO = 6,
  SV_ERR_ARGUMENT = 7,
  SV_ERR_INTERNAL = 8
} sv_status;

typedef struct sv_context sv_context;
typedef struct sv_derivation sv_derivation;
typedef struct sv_certificate sv_certificate;

typedef void (*sv_progress_fn)(const char* line, void* user);

SV_API const char* sv_version(void);
SV_API const char* sv_status_name(sv_status status);
SV_API void sv_string_free(char* s);

/* Contexts hold the run configuration, the progress callback and the last
 * error message. A context must not be used from two threads at once. */
SV_API sv_context* sv_context_new(void);
SV_API void sv_context_free(sv_context* ctx);
SV_API const char* sv_last_error(const sv_context* ctx);
SV_API void sv_set_progress(sv_context* ctx, sv_progress_fn fn, void* user);
SV_API sv_status sv_set_threads(sv_context* ctx, unsigned threads);

/* Keys: epsilon, budget, seed, granularity, margin, iteration_cap. */
SV_API sv_status sv_config_set(sv_context* ctx, const char* key, const char* value);
SV_API sv_status sv_config_load_json(sv_context* ctx, const char* json);
SV_API sv_status sv_config_to_json(sv_context* ctx, char** out);

/* Parses an inline list, a JSON array or a schedule file to a canonical
 * JSON array of rational strings. */
SV_API sv_status sv_parse_schedule(sv_context* ctx, const char* text, char** out);

/* Reads any file this library writes and returns it re-serialized. */
SV_API sv_status sv_reserialize(sv_context* ctx, const char* text, char** out);

/* hw bound for (n, E) with an explicit schedule of n-1 deltas. */
SV_API sv_status sv_hw_bound(sv_context* ctx, int n, const char* E,
                             const char* schedule_text, sv_derivation** out);
/* Optimised schedule; warm_text may be NULL. */
SV_API sv_status sv_optimize(sv_context* ctx, int n, const char* E,
                             const char* warm_text, sv_derivation** out);
SV_API sv_status sv_derivation_from_json(sv_context* ctx, const char* json,
                                         sv_derivation** out);
SV_API void sv_derivation_free(sv_derivation* d);
SV_API sv_status sv_derivation_total(sv_context* ctx, const sv_derivation* d, char** out);
SV_API sv_status sv_derivation_to_json(sv_context* ctx, const sv_derivation* d,
                                       char** out);
SV_API sv_status sv_derivation_schedule_json(sv_context* ctx, const sv_derivation* d,
                                             char** out);

/* SV_OK with *cert set, or SV_NEGATIVE with *failure_json set. */
SV_API sv_status sv_certify(sv_context* ctx, int r, const char* s,
                            sv_certificate** cert, char** failure_json);
SV_API sv_status sv_certificate_from_json(sv_context* ctx, const char* json,
                                          sv_certificate** out);
SV_API void sv_certificate_free(sv_certificate* cert);
SV_API sv_status sv_certificate_to_json(sv_context* ctx, const sv_certificate* cert,
                                        char** out);
/* One line: "r s certified_s steps conclusion". */
SV_API sv_status sv_certificate_summary(sv_context* ctx, const sv_certificate* cert,
                                        char** out);
/* SV_OK when every check passes, SV_NEGATIVE otherwise; *report lists the
 * failed checks one per line. */
SV_API sv_status sv_verify(sv_context* ctx, const sv_certificate* cert, char** report);

/* Replays the published chains in a data file, JSON report out. SV_NEGATIVE
 * if some chain fails to reach its contradiction. */
SV_API sv_status sv_replay(sv_context* ctx, const char* chains_json, char** report);
SV_API sv_status sv_equal_parts(sv_context* ctx, int r, char** out);
SV_API sv_status sv_find_min(sv_context* ctx, int r, const char* start,
                             int max_probes, char** report_json);

/* Lab runners write a plain-text report; SV_NEGATIVE signals mismatches
 * (expand, trick) or no witness (additive). */
SV_API sv_status sv_lab_expand(sv_context* ctx, uint64_t seed, int dim, int n,
                               int count, char** report);
SV_API sv_status sv_lab_trick(sv_context* ctx, uint64_t seed, int n, int dim,
                              int count, char** report);
/* lambdas_text NULL draws `count` random instances from `seed`. */
SV_API sv_status sv_lab_additive(sv_context* ctx, const char* lambdas_text,
                                 const char* tol, long box_cap, uint64_t seed,
                                 int count, const char* theta, char** report);

#ifdef __cplusplus
}
#endif

#endif /* SMALLVALUES_SMALLVALUES_H_ */
