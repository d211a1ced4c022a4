// Copyright 2026 The pretzel-surgeon Authors
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

#ifndef PRETZEL_SURGEON_H_
#define PRETZEL_SURGEON_H_

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define PS_API __attribute__((visibility("default")))
#else
#define PS_API
#endif

typedef enum {
  PS_OK = 0,
  PS_INVALID_ARGUMENT = 1,
  PS_INFEASIBLE = 2,
  PS_NOT_CONVERGED = 3,
  PS_IO = 4,
  PS_PARSE = 5,
  PS_PARTIAL_DATA = 6,
  PS_INTERNAL = 7
} ps_status;

typedef struct ps_context ps_context;
typedef struct ps_ledger ps_ledger;

/* Message for the last failing call on this thread; never NULL. */
PS_API const char* ps_last_error(void);
PS_API const char* ps_status_name(ps_status status);
PS_API const char* ps_version(void);

/* Strings returned through char** outputs are owned by the caller. */
PS_API void ps_string_free(char* s);

/* config_path may be NULL. */
PS_API ps_status ps_context_create(const char* config_path, ps_context** out);
PS_API void ps_context_free(ps_context* ctx);
PS_API ps_status ps_context_set_cache_dir(ps_context* ctx, const char* dir);
PS_API ps_status ps_context_set_data_dir(ps_context* ctx, const char* dir);

PS_API ps_status ps_classify(ps_context* ctx, int p, int q, int allow_asserted,
                             ps_ledger** out);
PS_API void ps_ledger_free(ps_ledger* ledger);
/* format is "json" or "table". */
PS_API ps_status ps_ledger_emit(const ps_ledger* ledger, const char* format,
                                char** out);
/* 1 when no non-trivial finite slope remains, else 0. */
PS_API int ps_ledger_conclusive(const ps_ledger* ledger);
/* Entries with the given status name; -1 for NULL or unknown names. */
PS_API int ps_ledger_count_status(const ps_ledger* ledger, const char* status);

/* Module endpoints; each writes a JSON document to *out. */
PS_API ps_status ps_boundary_slopes(ps_context* ctx, int p, int q, char** out);
PS_API ps_status ps_candidates(ps_context* ctx, int p, int q, char** out);
PS_API ps_status ps_norm_min(ps_context* ctx, int p, int q, const char* slope,
                             char** out);
PS_API ps_status ps_verdicts(ps_context* ctx, int p, int q, char** out);
PS_API ps_status ps_norm_shift(ps_context* ctx, int q, const char* coefficients,
                               char** out);
/* lattice may be NULL for every bundled lattice. */
PS_API ps_status ps_short_slopes(ps_context* ctx, const char* lattice,
                                 char** out);
/* path may be NULL for the bundled triangulation. cache_hit may be NULL. */
PS_API ps_status ps_ideal_scan(ps_context* ctx, const char* path, char** out,
                               int* cache_hit);
PS_API ps_status ps_continue(ps_context* ctx, const char* path,
                             const char* plan, int branch, char** out,
                             int* cache_hit);
/* shapes: "re,im;re,im;..." with degenerate entries written as 0 or 1. */
PS_API ps_status ps_volume(ps_context* ctx, const char* shapes, char** out);
/* tol <= 0 uses the configured tolerance. */
PS_API ps_status ps_ohtsuki_roots(ps_context* ctx, double tol, char** out);
/* slope is an integer or a/b. */
PS_API ps_status ps_group_ab(ps_context* ctx, int p, int q, const char* slope,
                             char** out);
/* preset: "c5", "abc2", or "redundant:<k>". */
PS_API ps_status ps_group_derive(ps_context* ctx, const char* preset, int p,
                                 int q, char** out);
/* preset: "even", "even-coxeter", "gm5", "gm3"; max_steps < 0 uses config. */
PS_API ps_status ps_group_quotient(ps_context* ctx, const char* preset, int p,
                                   int q, long max_steps, char** out);

#ifdef __cplusplus
}
#endif

#endif  /* PRETZEL_SURGEON_H_ */
