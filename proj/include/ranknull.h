/*
 * Copyright 2026 The ranknull authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * ranknull -- rank-based evaluation metrics with null-model adjustments.
 *
 * C API over the C++ core. Conventions:
 *
 *   - Objects are opaque handles created and destroyed by rn_*_create /
 *     rn_*_free pairs (any rn_*_free accepts NULL).
 *   - Fallible functions return rn_status; RN_OK is 0. On failure the
 *     out-parameters are untouched and rn_last_error() returns a
 *     thread-local human-readable detail message.
 *   - Strings returned as const char* from accessor functions stay
 *     owned by the handle (or are static); strings returned through
 *     char** out-parameters are owned by the caller and released with
 *     rn_string_free.
 *   - Handles are immutable after creation except rn_result_table.
 *     Distinct handles may be used from distinct threads freely.
 */
#ifndef RANKNULL_H_
#define RANKNULL_H_

#include <stddef.h>
#include <stdint.h>

#if defined(__GNUC__) || defined(__clang__)
#define RN_API __attribute__((visibility("default")))
#else
#define RN_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rn_status {
  RN_OK = 0,
  RN_ERR_INVALID_ARGUMENT,
  RN_ERR_EMPTY_INPUT,
  RN_ERR_EMPTY_CANDIDATES,
  RN_ERR_INVALID_SCORE,
  RN_ERR_TRUE_CANDIDATE_MISSING,
  RN_ERR_RANK_OUT_OF_BOUNDS,
  RN_ERR_EMPTY_SET,
  RN_ERR_NON_POSITIVE_INPUT,
  RN_ERR_UNKNOWN_METRIC,
  RN_ERR_UNSUPPORTED_COMPOSITION,
  RN_ERR_INVALID_SIZE,
  RN_ERR_NO_CLOSED_FORM,
  RN_ERR_DEGENERATE_SIZE,
  RN_ERR_INSUFFICIENT_SAMPLES,
  RN_ERR_ADJUSTMENT_NOT_APPLICABLE,
  RN_ERR_INVALID_NULL,
  RN_ERR_DEGENERATE_ADJUSTMENT,
  RN_ERR_ZERO_VARIANCE,
  RN_ERR_NOT_FOUND,
  RN_ERR_CONFLICTING_RECORD,
  RN_ERR_CORRUPT_DATABASE,
  RN_ERR_STORAGE,
  RN_ERR_PARSE,
  RN_ERR_IO,
  RN_ERR_INTERNAL
} rn_status;

typedef enum rn_tie_policy {
  RN_TIE_OPTIMISTIC = 0,
  RN_TIE_PESSIMISTIC = 1,
  RN_TIE_REALISTIC = 2
} rn_tie_policy;

/* How E[1/r] is evaluated for reciprocal-rank metrics: over the actual
 * discrete rank support (default) or the continuous approximation
 * ln(N)/(N-1) kept for comparisons against published numbers. */
typedef enum rn_mrr_mode {
  RN_MRR_DISCRETE = 0,
  RN_MRR_CONTINUOUS = 1
} rn_mrr_mode;

typedef enum rn_ranker_kind {
  RN_RANKER_ORACLE = 0,
  RN_RANKER_UNIFORM_RANDOM = 1,
  RN_RANKER_GAUSSIAN_SEPARATION = 2
} rn_ranker_kind;

typedef enum rn_format { RN_FORMAT_CSV = 0, RN_FORMAT_JSON = 1 } rn_format;

typedef struct rn_rank_set rn_rank_set;
typedef struct rn_metric rn_metric;
typedef struct rn_null_stats rn_null_stats;
typedef struct rn_result_table rn_result_table;

/* ------------------------------------------------------------------ */
/* Library                                                             */

RN_API const char* rn_version(void);

/* Stable kebab-case name of a status code, e.g. "rank-out-of-bounds". */
RN_API const char* rn_status_name(rn_status status);

/* Detail message of the calling thread's most recent failure. Valid
 * until the next failing call on the same thread. Never NULL. */
RN_API const char* rn_last_error(void);

RN_API void rn_string_free(char* s);

/* ------------------------------------------------------------------ */
/* Aggregation                                                         */

/* Generalized power mean of order p over strictly positive values.
 * p = 0 is the geometric mean; |p| above 1e6 (or an infinity) is the
 * max/min limit. */
RN_API rn_status rn_power_mean(const double* values, size_t n, double p,
                               double* out);

/* ------------------------------------------------------------------ */
/* Ranking                                                             */

/* Rank of the true candidate among the scored candidates, filtered
 * setting. candidate_scores includes the true candidate's own entry
 * (matched by exact score equality). filter_mask may be NULL for no
 * filtering; nonzero entries are removed before counting and must not
 * cover the true candidate. Realistic ties may produce half-integer
 * ranks. num_candidates_out receives the post-filter candidate count;
 * either out-pointer may be NULL. */
RN_API rn_status rn_score_to_rank(double true_score,
                                  const double* candidate_scores,
                                  const uint8_t* filter_mask, size_t n_scores,
                                  rn_tie_policy policy, double* rank_out,
                                  int64_t* num_candidates_out);

/* Validates ranks/num_candidates pairs (1 <= rank <= N) into a set. */
RN_API rn_status rn_rank_set_create(const double* ranks,
                                    const int64_t* num_candidates, size_t n,
                                    rn_rank_set** out);

/* Loads a rank file; .csv extension selects CSV, JSONL otherwise. */
RN_API rn_status rn_rank_set_load(const char* path, rn_rank_set** out);

/* Parses a JSONL scores file (true_score / candidate_scores / optional
 * mask per line) and ranks every task under the tie policy. */
RN_API rn_status rn_rank_set_from_scores_file(const char* path,
                                              rn_tie_policy policy,
                                              rn_rank_set** out);

RN_API rn_status rn_rank_set_save_jsonl(const rn_rank_set* set,
                                        const char* path);

/* Loads only the candidate-set sizes from a rank or sizes file (the
 * rank field is optional in this shape). *sizes_out is caller-owned;
 * release with rn_sizes_free. */
RN_API rn_status rn_sizes_load(const char* path, int64_t** sizes_out,
                               size_t* n_out);

RN_API void rn_sizes_free(int64_t* sizes);

/* Synthetic ranker over one (kind, size) cell. separation is only read
 * for RN_RANKER_GAUSSIAN_SEPARATION. Deterministic in the seed. */
RN_API rn_status rn_rank_set_simulate(rn_ranker_kind kind, double separation,
                                      size_t num_tasks, int64_t candidate_size,
                                      uint64_t seed, rn_rank_set** out);

RN_API void rn_rank_set_free(rn_rank_set* set);

RN_API size_t rn_rank_set_size(const rn_rank_set* set);

/* "left", "right", "both" or "unspecified". */
RN_API const char* rn_rank_set_side(const rn_rank_set* set);

RN_API rn_status rn_rank_set_get(const rn_rank_set* set, size_t index,
                                 double* rank_out,
                                 int64_t* num_candidates_out);

/* Copies all candidate-set sizes into sizes_out (length >= size). */
RN_API rn_status rn_rank_set_sizes(const rn_rank_set* set,
                                   int64_t* sizes_out);

/* ------------------------------------------------------------------ */
/* Metrics                                                             */

/* Stable names: mr, mrr, mrr_colloquial, imr, hmr, gmr, igmr, and the
 * parametric hits@<k> for any cutoff k >= 1. */
RN_API rn_status rn_metric_find(const char* name, rn_metric** out);

RN_API void rn_metric_free(rn_metric* metric);

RN_API const char* rn_metric_name(const rn_metric* metric);

/* 1 when larger values are better, 0 for the rank-scale metrics. */
RN_API int rn_metric_is_increasing(const rn_metric* metric);

/* Number of builtin metric names; fills names_out (static storage, do
 * not free) up to cap entries. */
RN_API size_t rn_metric_names(const char** names_out, size_t cap);

RN_API rn_status rn_metric_evaluate(const rn_metric* metric,
                                    const rn_rank_set* set, double* out);

/* ------------------------------------------------------------------ */
/* Null models                                                         */

/* Closed-form expectation/variance of the metric under ranks drawn
 * uniformly from {1..N_i}. Supported for mr, mrr (both modes),
 * mrr_colloquial and hits@k; RN_ERR_NO_CLOSED_FORM otherwise. */
RN_API rn_status rn_null_closed(const rn_metric* metric, const int64_t* sizes,
                                size_t n, rn_mrr_mode mode,
                                rn_null_stats** out);

/* Monte Carlo estimate: `samples` replicates (>= 2), replicate j's
 * draws derived deterministically from (seed, j). Bit-reproducible. */
RN_API rn_status rn_null_monte_carlo(const rn_metric* metric,
                                     const int64_t* sizes, size_t n,
                                     uint64_t samples, uint64_t seed,
                                     rn_null_stats** out);

/* Closed form when available, Monte Carlo fallback otherwise. */
RN_API rn_status rn_null_auto(const rn_metric* metric, const int64_t* sizes,
                              size_t n, rn_mrr_mode mode, uint64_t samples,
                              uint64_t seed, rn_null_stats** out);

/* Wraps externally supplied constants (e.g. published numbers) so they
 * can drive the adjustment functions. Pass has_variance = 0 when only
 * the expectation is known; z then stays unavailable. */
RN_API rn_status rn_null_stats_create(const char* metric, double expectation,
                                      int has_variance, double variance,
                                      rn_null_stats** out);

RN_API void rn_null_stats_free(rn_null_stats* stats);

RN_API double rn_null_stats_expectation(const rn_null_stats* stats);
RN_API double rn_null_stats_variance(const rn_null_stats* stats);
/* "closed_exact", "closed_continuous" or "monte_carlo". */
RN_API const char* rn_null_stats_method(const rn_null_stats* stats);
RN_API uint64_t rn_null_stats_samples(const rn_null_stats* stats);
RN_API uint64_t rn_null_stats_seed(const rn_null_stats* stats);
RN_API const char* rn_null_stats_metric(const rn_null_stats* stats);
RN_API const char* rn_null_stats_sizes_digest(const rn_null_stats* stats);

/* ------------------------------------------------------------------ */
/* Adjustments                                                         */

/* value / E[M]; rank-scale (decreasing) metrics only. */
RN_API rn_status rn_expectation_adjust(const rn_metric* metric, double value,
                                       const rn_null_stats* stats,
                                       double* out);

/* (value - E)/(optimum - E) with optimum 1, orientation corrected so 1
 * is optimal and 0 is chance level for every metric. */
RN_API rn_status rn_adjusted_index(const rn_metric* metric, double value,
                                   const rn_null_stats* stats, double* out);

/* Standard score (value - E)/sqrt(Var). orient_larger_better selects
 * the reporting convention that flips the sign for decreasing metrics;
 * pass 0 for the raw score. */
RN_API rn_status rn_z_adjust(const rn_metric* metric, double value,
                             const rn_null_stats* stats,
                             int orient_larger_better, double* out);

/* Closed lower end of the adjusted-index codomain; RN_ERR_NO_CLOSED_FORM
 * for metrics without one (hmr, gmr). */
RN_API rn_status rn_adjusted_index_lower_bound(const rn_metric* metric,
                                               const rn_null_stats* stats,
                                               double* out);

/* Standard normal CDF (absolute error below 1e-10). */
RN_API double rn_phi(double z);

/* ------------------------------------------------------------------ */
/* Constants database                                                  */

/* Upserts the statistics under (dataset, split, side, metric-inside-
 * stats) into the JSONL database at db_path. sizes must be the exact
 * sequence the statistics were computed from. Storing an identical
 * record is a no-op; a differing one fails with
 * RN_ERR_CONFLICTING_RECORD unless overwrite is nonzero. */
RN_API rn_status rn_constants_store(const char* db_path, const char* dataset,
                                    const char* split, const char* side,
                                    const rn_null_stats* stats,
                                    const int64_t* sizes, size_t n,
                                    int overwrite);

/* Full-scan lookup; on success returns the stored statistics and, via
 * the optional out-pointers, the candidate-size summary. */
RN_API rn_status rn_constants_lookup(const char* db_path, const char* dataset,
                                     const char* split, const char* side,
                                     const char* metric, rn_null_stats** out,
                                     int64_t* n_out, int64_t* min_n_out,
                                     int64_t* max_n_out);

typedef struct rn_stratum {
  const char* split; /* train | test | validation | custom */
  const char* side;  /* left | right | both */
  const int64_t* sizes;
  size_t n_sizes;
} rn_stratum;

/* Builds records for every stratum x metric (closed form when the
 * metric has one, Monte Carlo with (samples, seed) otherwise).
 * Failures are isolated per stratum x metric: written_out counts the
 * stored records and, when failures_out is non-NULL, *failures_out is
 * a caller-owned report ("split/side/metric: message" per line, empty
 * string when clean). */
RN_API rn_status rn_constants_build(const char* db_path, const char* dataset,
                                    const rn_stratum* strata, size_t n_strata,
                                    const char* const* metrics,
                                    size_t n_metrics, rn_mrr_mode mode,
                                    uint64_t samples, uint64_t seed,
                                    int overwrite, size_t* written_out,
                                    char** failures_out);

/* ------------------------------------------------------------------ */
/* Result tables                                                       */

RN_API rn_status rn_result_table_create(rn_result_table** out);
RN_API void rn_result_table_free(rn_result_table* table);

/* Evaluates the metric on the set and fills every adjusted column the
 * statistics support; inapplicable columns stay empty. The statistics
 * must be for the same metric. */
RN_API rn_status rn_result_table_add_evaluated(rn_result_table* table,
                                               const char* label,
                                               const rn_metric* metric,
                                               const rn_rank_set* set,
                                               const rn_null_stats* stats);

/* Post-hoc row from an already-computed base value. has_expectation /
 * has_variance gate which adjusted columns can be derived. */
RN_API rn_status rn_result_table_add_adhoc(
    rn_result_table* table, const char* label, const rn_metric* metric,
    double value, int64_t n, int has_expectation, double expectation,
    int has_variance, double variance, const char* null_method);

RN_API size_t rn_result_table_rows(const rn_result_table* table);

/* Renders the table; *out is caller-owned (rn_string_free). CSV keeps
 * the fixed column order with 12 significant digits; JSON carries full
 * precision plus orientation metadata. */
RN_API rn_status rn_result_table_render(const rn_result_table* table,
                                        rn_format format, char** out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* RANKNULL_H_ */
