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
#include "ranknull.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "core/adjustments.hpp"
#include "core/constants_db.hpp"
#include "core/error.hpp"
#include "core/io.hpp"
#include "core/metrics.hpp"
#include "core/null_models.hpp"
#include "core/power_mean.hpp"
#include "core/ranking.hpp"
#include "core/report.hpp"
#include "core/simulate.hpp"

struct rn_rank_set {
  ranknull::RankSet impl;
};

struct rn_metric {
  ranknull::MetricDefinition impl;
};

struct rn_null_stats {
  ranknull::NullStatistics impl;
};

struct rn_result_table {
  ranknull::ResultTable impl;
};

namespace {

thread_local std::string g_last_error;

rn_status map_code(ranknull::ErrorCode code) {
  using ranknull::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return RN_ERR_INVALID_ARGUMENT;
    case ErrorCode::kEmptyInput:
      return RN_ERR_EMPTY_INPUT;
    case ErrorCode::kEmptyCandidates:
      return RN_ERR_EMPTY_CANDIDATES;
    case ErrorCode::kInvalidScore:
      return RN_ERR_INVALID_SCORE;
    case ErrorCode::kTrueCandidateMissing:
      return RN_ERR_TRUE_CANDIDATE_MISSING;
    case ErrorCode::kRankOutOfBounds:
      return RN_ERR_RANK_OUT_OF_BOUNDS;
    case ErrorCode::kEmptySet:
      return RN_ERR_EMPTY_SET;
    case ErrorCode::kNonPositiveInput:
      return RN_ERR_NON_POSITIVE_INPUT;
    case ErrorCode::kUnknownMetric:
      return RN_ERR_UNKNOWN_METRIC;
    case ErrorCode::kUnsupportedComposition:
      return RN_ERR_UNSUPPORTED_COMPOSITION;
    case ErrorCode::kInvalidSize:
      return RN_ERR_INVALID_SIZE;
    case ErrorCode::kNoClosedForm:
      return RN_ERR_NO_CLOSED_FORM;
    case ErrorCode::kDegenerateSize:
      return RN_ERR_DEGENERATE_SIZE;
    case ErrorCode::kInsufficientSamples:
      return RN_ERR_INSUFFICIENT_SAMPLES;
    case ErrorCode::kAdjustmentNotApplicable:
      return RN_ERR_ADJUSTMENT_NOT_APPLICABLE;
    case ErrorCode::kInvalidNull:
      return RN_ERR_INVALID_NULL;
    case ErrorCode::kDegenerateAdjustment:
      return RN_ERR_DEGENERATE_ADJUSTMENT;
    case ErrorCode::kZeroVariance:
      return RN_ERR_ZERO_VARIANCE;
    case ErrorCode::kNotFound:
      return RN_ERR_NOT_FOUND;
    case ErrorCode::kConflictingRecord:
      return RN_ERR_CONFLICTING_RECORD;
    case ErrorCode::kCorruptDatabase:
      return RN_ERR_CORRUPT_DATABASE;
    case ErrorCode::kStorageError:
      return RN_ERR_STORAGE;
    case ErrorCode::kParseError:
      return RN_ERR_PARSE;
    case ErrorCode::kIoError:
      return RN_ERR_IO;
  }
  return RN_ERR_INTERNAL;
}

template <typename Fn>
rn_status wrap(Fn&& fn) {
  try {
    fn();
    return RN_OK;
  } catch (const ranknull::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return RN_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return RN_ERR_INTERNAL;
  }
}

rn_status fail(rn_status status, const char* message) {
  g_last_error = message;
  return status;
}

rn_status require(bool ok, const char* message) {
  return ok ? RN_OK : fail(RN_ERR_INVALID_ARGUMENT, message);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ranknull::TiePolicy to_tie_policy(rn_tie_policy policy) {
  switch (policy) {
    case RN_TIE_OPTIMISTIC:
      return ranknull::TiePolicy::kOptimistic;
    case RN_TIE_PESSIMISTIC:
      return ranknull::TiePolicy::kPessimistic;
    case RN_TIE_REALISTIC:
      return ranknull::TiePolicy::kRealistic;
  }
  throw ranknull::Error(ranknull::ErrorCode::kInvalidArgument,
                        "unknown tie policy value");
}

ranknull::MrrMode to_mrr_mode(rn_mrr_mode mode) {
  switch (mode) {
    case RN_MRR_DISCRETE:
      return ranknull::MrrMode::kExactDiscrete;
    case RN_MRR_CONTINUOUS:
      return ranknull::MrrMode::kContinuous;
  }
  throw ranknull::Error(ranknull::ErrorCode::kInvalidArgument,
                        "unknown mrr mode value");
}

ranknull::RankerKind to_ranker_kind(rn_ranker_kind kind) {
  switch (kind) {
    case RN_RANKER_ORACLE:
      return ranknull::RankerKind::kOracle;
    case RN_RANKER_UNIFORM_RANDOM:
      return ranknull::RankerKind::kUniformRandom;
    case RN_RANKER_GAUSSIAN_SEPARATION:
      return ranknull::RankerKind::kGaussianSeparation;
  }
  throw ranknull::Error(ranknull::ErrorCode::kInvalidArgument,
                        "unknown ranker kind value");
}

}  // namespace

extern "C" {

const char* rn_version(void) { return "1.0.0"; }

const char* rn_status_name(rn_status status) {
  switch (status) {
    case RN_OK:
      return "ok";
    case RN_ERR_INVALID_ARGUMENT:
      return "invalid-argument";
    case RN_ERR_EMPTY_INPUT:
      return "empty-input";
    case RN_ERR_EMPTY_CANDIDATES:
      return "empty-candidates";
    case RN_ERR_INVALID_SCORE:
      return "invalid-score";
    case RN_ERR_TRUE_CANDIDATE_MISSING:
      return "true-candidate-missing";
    case RN_ERR_RANK_OUT_OF_BOUNDS:
      return "rank-out-of-bounds";
    case RN_ERR_EMPTY_SET:
      return "empty-set";
    case RN_ERR_NON_POSITIVE_INPUT:
      return "non-positive-input";
    case RN_ERR_UNKNOWN_METRIC:
      return "unknown-metric";
    case RN_ERR_UNSUPPORTED_COMPOSITION:
      return "unsupported-composition";
    case RN_ERR_INVALID_SIZE:
      return "invalid-size";
    case RN_ERR_NO_CLOSED_FORM:
      return "no-closed-form";
    case RN_ERR_DEGENERATE_SIZE:
      return "degenerate-size";
    case RN_ERR_INSUFFICIENT_SAMPLES:
      return "insufficient-samples";
    case RN_ERR_ADJUSTMENT_NOT_APPLICABLE:
      return "adjustment-not-applicable";
    case RN_ERR_INVALID_NULL:
      return "invalid-null";
    case RN_ERR_DEGENERATE_ADJUSTMENT:
      return "degenerate-adjustment";
    case RN_ERR_ZERO_VARIANCE:
      return "zero-variance";
    case RN_ERR_NOT_FOUND:
      return "not-found";
    case RN_ERR_CONFLICTING_RECORD:
      return "conflicting-record";
    case RN_ERR_CORRUPT_DATABASE:
      return "corrupt-database";
    case RN_ERR_STORAGE:
      return "storage-error";
    case RN_ERR_PARSE:
      return "parse-error";
    case RN_ERR_IO:
      return "io-error";
    case RN_ERR_INTERNAL:
      return "internal-error";
  }
  return "unknown-status";
}

const char* rn_last_error(void) { return g_last_error.c_str(); }

void rn_string_free(char* s) { std::free(s); }

/* ------------------------------------------------------------------ */

rn_status rn_power_mean(const double* values, size_t n, double p,
                        double* out) {
  if (rn_status s = require(out != nullptr, "out must not be NULL")) return s;
  if (rn_status s = require(values != nullptr || n == 0,
                            "values must not be NULL for n > 0")) {
    return s;
  }
  return wrap([&] { *out = ranknull::power_mean({values, n}, p); });
}

/* ------------------------------------------------------------------ */

rn_status rn_score_to_rank(double true_score, const double* candidate_scores,
                           const uint8_t* filter_mask, size_t n_scores,
                           rn_tie_policy policy, double* rank_out,
                           int64_t* num_candidates_out) {
  if (rn_status s = require(candidate_scores != nullptr || n_scores == 0,
                            "candidate_scores must not be NULL for n > 0")) {
    return s;
  }
  return wrap([&] {
    std::span<const uint8_t> mask;
    if (filter_mask != nullptr) mask = {filter_mask, n_scores};
    ranknull::RankingTask task = ranknull::score_to_rank(
        true_score, {candidate_scores, n_scores}, mask, to_tie_policy(policy));
    if (rank_out != nullptr) *rank_out = task.rank;
    if (num_candidates_out != nullptr) {
      *num_candidates_out = task.num_candidates;
    }
  });
}

rn_status rn_rank_set_create(const double* ranks,
                             const int64_t* num_candidates, size_t n,
                             rn_rank_set** out) {
  if (rn_status s = require(out != nullptr, "out must not be NULL")) return s;
  if (rn_status s =
          require((ranks != nullptr && num_candidates != nullptr) || n == 0,
                  "ranks and num_candidates must not be NULL for n > 0")) {
    return s;
  }
  return wrap([&] {
    std::vector<ranknull::RankingTask> tasks(n);
    for (size_t i = 0; i < n; ++i) {
      tasks[i] = {ranks[i], num_candidates[i]};
    }
    *out = new rn_rank_set{ranknull::RankSet(std::move(tasks))};
  });
}

rn_status rn_rank_set_load(const char* path, rn_rank_set** out) {
  if (rn_status s = require(out != nullptr, "out must not be NULL")) return s;
  if (rn_status s = require(path != nullptr, "path must not be NULL")) {
    return s;
  }
  return wrap([&] { *out = new rn_rank_set{ranknull::load_rank_set(path)}; });
}

rn_status rn_rank_set_from_scores_file(const char* path, rn_tie_policy policy,
                                       rn_rank_set** out) {
  if (rn_status s = require(out != nullptr, "out must not be NULL")) return s;
  if (rn_status s = require(path != nullptr, "path must not be NULL")) {
    return s;
  }
  return wrap([&] {
    std::vector<ranknull::ScoredTask> tasks = ranknull::load_scored_tasks(path);
    *out = new rn_rank_set{
        ranknull::rank_scored_tasks(tasks, to_tie_policy(policy))};
  });
}

rn_status rn_rank_set_save_jsonl(const rn_rank_set* set, const char* path) {
  if (rn_status s = require(set != nullptr, "set must not be NULL")) return s;
  if (rn_status s = require(path != nullptr, "path must not be NULL")) {
    return s;
  }
  return wrap([&] { ranknull::save_rank_set_jsonl(set->impl, path); });
}

rn_status rn_sizes_load(const char* path, int64_t** sizes_out,
                        size_t* n_out) {
  if (rn_status s = require(sizes_out != nullptr && n_out != nullptr,
                            "sizes_out and n_out must not be NULL")) {
    return s;
  }
  if (rn_status s = require(path != nullptr, "path must not be NULL")) {
    return s;
  }
  return wrap([&] {
    std::vector<int64_t> sizes = ranknull::load_sizes(path);
    auto* out =
        static_cast<int64_t*>(std::malloc(sizes.size() * sizeof(int64_t)));
    if (out == nullptr && !sizes.empty()) throw std::bad_alloc();
    if (!sizes.empty()) {
      std::memcpy(out, sizes.data(), sizes.size() * sizeof(int64_t));
    }
    *sizes_out = out;
    *n_out = sizes.size();
  });
}

void rn_sizes_free(int64_t* sizes) { std::free(sizes); }

rn_status rn_rank_set_simulate(rn_ranker_kind kind, double separation,
                               size_t num_tasks, int64_t candidate_size,
                               uint64_t seed, rn_rank_set** out) {
  if (rn_status s = require(out != nullptr, "out must not be NULL")) return s;
  return wrap([&] {
    ranknull::SyntheticRankerSpec spec;
    spec.kind = to_ranker_kind(kind);
    spec.separation = separation;
    spec.num_tasks = num_tasks;
    spec.candidate_size = candidate_size;
    spec.seed = seed;
    *out = new rn_rank_set{ranknull::simulate_ranks(spec)};
  });
}

void rn_rank_set_free(rn_rank_set* set) { delete set; }

size_t rn_rank_set_size(const rn_rank_set* set) {
  return set == nullptr ? 0 : set->impl.size();
}

const char* rn_rank_set_side(const rn_rank_set* set) {
  if (set == nullptr) return "unspecified";
  return ranknull::side_name(set->impl.side()).data();
}

rn_status rn_rank_set_get(const rn_rank_set* set, size_t index,
                          double* rank_out, int64_t* num_candidates_out) {
  if (rn_status s = require(set != nullptr, "set must not be NULL")) return s;
  if (index >= set->impl.size()) {
    return fail(RN_ERR_INVALID_ARGUMENT, "task index out of range");
  }
  const ranknull::RankingTask& task = set->impl.tasks()[index];
  if (rank_out != nullptr) *rank_out = task.rank;
  if (num_candidates_out != nullptr) {
    *num_candidates_out = task.num_candidates;
  }
  return RN_OK;
}

rn_status rn_rank_set_sizes(const rn_rank_set* set, int64_t* sizes_out) {
  if (rn_status s = require(set != nullptr, "set must not be NULL")) return s;
  if (rn_status s = require(sizes_out != nullptr || set->impl.size() == 0,
                            "sizes_out must not be NULL")) {
    return s;
  }
  const auto& tasks = set->impl.tasks();
  for (size_t i = 0; i < tasks.size(); ++i) {
    sizes_out[i] = tasks[i].num_candidates;
  }
  return RN_OK;
}

/* ------------------------------------------------------------------ */

rn_status rn_metric_find(const char* name, rn_metric** out) {
  if (rn_status s = require(out != nullptr, "out must not be NULL")) return s;
  if (rn_status s = require(name != nullptr, "name must not be NULL")) {
    return s;
  }
  return wrap([&] { *out = new rn_metric{ranknull::find_metric(name)}; });
}

void rn_metric_free(rn_metric* metric) { delete metric; }

const char* rn_metric_name(const rn_metric* metric) {
  return metric == nullptr ? "" : metric->impl.name.c_str();
}

int rn_metric_is_increasing(const rn_metric* metric) {
  if (metric == nullptr) return 0;
  return metric->impl.direction == ranknull::Direction::kIncreasing ? 1 : 0;
}

size_t rn_metric_names(const char** names_out, size_t cap) {
  const std::vector<std::string>& names = ranknull::builtin_metric_names();
  if (names_out != nullptr) {
    for (size_t i = 0; i < names.size() && i < cap; ++i) {
      names_out[i] = names[i].c_str();
    }
  }
  return names.size();
}

rn_status rn_metric_evaluate(const rn_metric* metric, const rn_rank_set* set,
                             double* out) {
  if (rn_status s = require(out != nullptr, "out must not be NULL")) return s;
  if (rn_status s = require(metric != nullptr && set != nullptr,
                            "metric and set must not be NULL")) {
    return s;
  }
  return wrap(
      [&] { *out = ranknull::evaluate(metric->impl, set->impl).value; });
}

/* ------------------------------------------------------------------ */

rn_status rn_null_closed(const rn_metric* metric, const int64_t* sizes,
                         size_t n, rn_mrr_mode mode, rn_null_stats** out) {
  if (rn_status s = require(out != nullptr, "out must not be NULL")) return s;
  if (rn_status s = require(metric != nullptr, "metric must not be NULL")) {
    return s;
  }
  if (rn_status s = require(sizes != nullptr || n == 0,
                            "sizes must not be NULL for n > 0")) {
    return s;
  }
  return wrap([&] {
    *out = new rn_null_stats{ranknull::null_statistics_closed(
        metric->impl, {sizes, n}, to_mrr_mode(mode))};
  });
}

rn_status rn_null_monte_carlo(const rn_metric* metric, const int64_t* sizes,
                              size_t n, uint64_t samples, uint64_t seed,
                              rn_null_stats** out) {
  if (rn_status s = require(out != nullptr, "out must not be NULL")) return s;
  if (rn_status s = require(metric != nullptr, "metric must not be NULL")) {
    return s;
  }
  if (rn_status s = require(sizes != nullptr || n == 0,
                            "sizes must not be NULL for n > 0")) {
    return s;
  }
  return wrap([&] {
    *out = new rn_null_stats{ranknull::null_statistics_monte_carlo(
        metric->impl, {sizes, n}, samples, seed)};
  });
}

rn_status rn_null_auto(const rn_metric* metric, const int64_t* sizes, size_t n,
                       rn_mrr_mode mode, uint64_t samples, uint64_t seed,
                       rn_null_stats** out) {
  if (rn_status s = require(out != nullptr, "out must not be NULL")) return s;
  if (rn_status s = require(metric != nullptr, "metric must not be NULL")) {
    return s;
  }
  if (rn_status s = require(sizes != nullptr || n == 0,
                            "sizes must not be NULL for n > 0")) {
    return s;
  }
  return wrap([&] {
    *out = new rn_null_stats{ranknull::null_statistics_auto(
        metric->impl, {sizes, n}, to_mrr_mode(mode), samples, seed)};
  });
}

rn_status rn_null_stats_create(const char* metric, double expectation,
                               int has_variance, double variance,
                               rn_null_stats** out) {
  if (rn_status s = require(out != nullptr, "out must not be NULL")) return s;
  if (rn_status s = require(metric != nullptr, "metric must not be NULL")) {
    return s;
  }
  return wrap([&] {
    ranknull::NullStatistics stats;
    stats.expectation = expectation;
    stats.variance = has_variance != 0 ? variance : 0.0;
    stats.metric_name = metric;
    *out = new rn_null_stats{std::move(stats)};
  });
}

void rn_null_stats_free(rn_null_stats* stats) { delete stats; }

double rn_null_stats_expectation(const rn_null_stats* stats) {
  return stats == nullptr ? 0.0 : stats->impl.expectation;
}

double rn_null_stats_variance(const rn_null_stats* stats) {
  return stats == nullptr ? 0.0 : stats->impl.variance;
}

const char* rn_null_stats_method(const rn_null_stats* stats) {
  if (stats == nullptr) return "";
  return ranknull::null_method_name(stats->impl.method).data();
}

uint64_t rn_null_stats_samples(const rn_null_stats* stats) {
  return stats == nullptr ? 0 : stats->impl.samples;
}

uint64_t rn_null_stats_seed(const rn_null_stats* stats) {
  return stats == nullptr ? 0 : stats->impl.seed;
}

const char* rn_null_stats_metric(const rn_null_stats* stats) {
  return stats == nullptr ? "" : stats->impl.metric_name.c_str();
}

const char* rn_null_stats_sizes_digest(const rn_null_stats* stats) {
  return stats == nullptr ? "" : stats->impl.sizes_digest.c_str();
}

/* ------------------------------------------------------------------ */

rn_status rn_expectation_adjust(const rn_metric* metric, double value,
                                const rn_null_stats* stats, double* out) {
  if (rn_status s = require(out != nullptr, "out must not be NULL")) return s;
  if (rn_status s = require(metric != nullptr && stats != nullptr,
                            "metric and stats must not be NULL")) {
    return s;
  }
  return wrap([&] {
    ranknull::MetricValue mv{value, metric->impl, 0};
    *out = ranknull::expectation_adjust(mv, stats->impl);
  });
}

rn_status rn_adjusted_index(const rn_metric* metric, double value,
                            const rn_null_stats* stats, double* out) {
  if (rn_status s = require(out != nullptr, "out must not be NULL")) return s;
  if (rn_status s = require(metric != nullptr && stats != nullptr,
                            "metric and stats must not be NULL")) {
    return s;
  }
  return wrap([&] {
    ranknull::MetricValue mv{value, metric->impl, 0};
    *out = ranknull::adjusted_index(mv, stats->impl);
  });
}

rn_status rn_z_adjust(const rn_metric* metric, double value,
                      const rn_null_stats* stats, int orient_larger_better,
                      double* out) {
  if (rn_status s = require(out != nullptr, "out must not be NULL")) return s;
  if (rn_status s = require(metric != nullptr && stats != nullptr,
                            "metric and stats must not be NULL")) {
    return s;
  }
  return wrap([&] {
    ranknull::MetricValue mv{value, metric->impl, 0};
    double z = ranknull::z_adjust(mv, stats->impl);
    if (orient_larger_better != 0) z = ranknull::oriented_z(metric->impl, z);
    *out = z;
  });
}

rn_status rn_adjusted_index_lower_bound(const rn_metric* metric,
                                        const rn_null_stats* stats,
                                        double* out) {
  if (rn_status s = require(out != nullptr, "out must not be NULL")) return s;
  if (rn_status s = require(metric != nullptr && stats != nullptr,
                            "metric and stats must not be NULL")) {
    return s;
  }
  return wrap([&] {
    std::optional<double> bound =
        ranknull::adjusted_index_lower_bound(metric->impl, stats->impl);
    if (!bound.has_value()) {
      throw ranknull::Error(
          ranknull::ErrorCode::kNoClosedForm,
          "no closed lower bound for metric " + metric->impl.name);
    }
    *out = *bound;
  });
}

double rn_phi(double z) { return ranknull::phi(z); }

/* ------------------------------------------------------------------ */

rn_status rn_constants_store(const char* db_path, const char* dataset,
                             const char* split, const char* side,
                             const rn_null_stats* stats, const int64_t* sizes,
                             size_t n, int overwrite) {
  if (rn_status s =
          require(db_path != nullptr && dataset != nullptr &&
                      split != nullptr && side != nullptr && stats != nullptr,
                  "db_path, dataset, split, side and stats are required")) {
    return s;
  }
  if (rn_status s = require(sizes != nullptr || n == 0,
                            "sizes must not be NULL for n > 0")) {
    return s;
  }
  return wrap([&] {
    ranknull::ConstantsRecord record = ranknull::make_constants_record(
        dataset, split, side, stats->impl, {sizes, n});
    ranknull::store(record, db_path, overwrite != 0);
  });
}

rn_status rn_constants_lookup(const char* db_path, const char* dataset,
                              const char* split, const char* side,
                              const char* metric, rn_null_stats** out,
                              int64_t* n_out, int64_t* min_n_out,
                              int64_t* max_n_out) {
  if (rn_status s = require(out != nullptr, "out must not be NULL")) return s;
  if (rn_status s =
          require(db_path != nullptr && dataset != nullptr &&
                      split != nullptr && side != nullptr && metric != nullptr,
                  "db_path, dataset, split, side and metric are required")) {
    return s;
  }
  return wrap([&] {
    ranknull::ConstantsRecord record =
        ranknull::lookup(dataset, split, side, metric, db_path);
    if (n_out != nullptr) *n_out = record.summary.n;
    if (min_n_out != nullptr) *min_n_out = record.summary.min_n;
    if (max_n_out != nullptr) *max_n_out = record.summary.max_n;
    *out = new rn_null_stats{std::move(record.stats)};
  });
}

rn_status rn_constants_build(const char* db_path, const char* dataset,
                             const rn_stratum* strata, size_t n_strata,
                             const char* const* metrics, size_t n_metrics,
                             rn_mrr_mode mode, uint64_t samples, uint64_t seed,
                             int overwrite, size_t* written_out,
                             char** failures_out) {
  if (rn_status s = require(db_path != nullptr && dataset != nullptr,
                            "db_path and dataset are required")) {
    return s;
  }
  if (rn_status s = require(strata != nullptr || n_strata == 0,
                            "strata must not be NULL for n_strata > 0")) {
    return s;
  }
  if (rn_status s = require(metrics != nullptr || n_metrics == 0,
                            "metrics must not be NULL for n_metrics > 0")) {
    return s;
  }
  return wrap([&] {
    ranknull::DatasetSpec spec;
    spec.name = dataset;
    spec.strata.reserve(n_strata);
    for (size_t i = 0; i < n_strata; ++i) {
      const rn_stratum& stratum = strata[i];
      if (stratum.split == nullptr || stratum.side == nullptr) {
        throw ranknull::Error(ranknull::ErrorCode::kInvalidArgument,
                              "stratum split and side must not be NULL");
      }
      if (stratum.sizes == nullptr && stratum.n_sizes > 0) {
        throw ranknull::Error(ranknull::ErrorCode::kInvalidArgument,
                              "stratum sizes must not be NULL");
      }
      ranknull::DatasetStratum out_stratum;
      out_stratum.split = stratum.split;
      out_stratum.side = stratum.side;
      out_stratum.sizes.assign(stratum.sizes, stratum.sizes + stratum.n_sizes);
      spec.strata.push_back(std::move(out_stratum));
    }
    std::vector<std::string> metric_names;
    metric_names.reserve(n_metrics);
    for (size_t i = 0; i < n_metrics; ++i) {
      if (metrics[i] == nullptr) {
        throw ranknull::Error(ranknull::ErrorCode::kInvalidArgument,
                              "metric name must not be NULL");
      }
      metric_names.emplace_back(metrics[i]);
    }
    ranknull::BuildReport report =
        ranknull::build_constants(spec, metric_names, samples, seed,
                                  to_mrr_mode(mode), db_path, overwrite != 0);
    if (written_out != nullptr) *written_out = report.written;
    if (failures_out != nullptr) {
      std::string joined;
      for (const ranknull::BuildFailure& failure : report.failures) {
        joined += failure.split;
        joined += '/';
        joined += failure.side;
        joined += '/';
        joined += failure.metric;
        joined += ": ";
        joined += failure.error;
        joined += '\n';
      }
      *failures_out = dup_string(joined);
    }
  });
}

/* ------------------------------------------------------------------ */

rn_status rn_result_table_create(rn_result_table** out) {
  if (rn_status s = require(out != nullptr, "out must not be NULL")) return s;
  return wrap([&] { *out = new rn_result_table{}; });
}

void rn_result_table_free(rn_result_table* table) { delete table; }

rn_status rn_result_table_add_evaluated(rn_result_table* table,
                                        const char* label,
                                        const rn_metric* metric,
                                        const rn_rank_set* set,
                                        const rn_null_stats* stats) {
  if (rn_status s =
          require(table != nullptr && label != nullptr && metric != nullptr &&
                      set != nullptr && stats != nullptr,
                  "table, label, metric, set and stats are required")) {
    return s;
  }
  return wrap([&] {
    table->impl.add_evaluated(label, metric->impl, set->impl, stats->impl);
  });
}

rn_status rn_result_table_add_adhoc(rn_result_table* table, const char* label,
                                    const rn_metric* metric, double value,
                                    int64_t n, int has_expectation,
                                    double expectation, int has_variance,
                                    double variance, const char* null_method) {
  if (rn_status s = require(table != nullptr && label != nullptr &&
                                metric != nullptr,
                            "table, label and metric are required")) {
    return s;
  }
  if (rn_status s = require(n >= 0, "n must be non-negative")) return s;
  return wrap([&] {
    std::optional<double> e;
    std::optional<double> v;
    if (has_expectation != 0) e = expectation;
    if (has_variance != 0) v = variance;
    table->impl.add_adhoc(label, metric->impl, value,
                          static_cast<std::size_t>(n), e, v,
                          null_method == nullptr ? "" : null_method);
  });
}

size_t rn_result_table_rows(const rn_result_table* table) {
  return table == nullptr ? 0 : table->impl.rows().size();
}

rn_status rn_result_table_render(const rn_result_table* table,
                                 rn_format format, char** out) {
  if (rn_status s = require(out != nullptr, "out must not be NULL")) return s;
  if (rn_status s = require(table != nullptr, "table must not be NULL")) {
    return s;
  }
  return wrap([&] {
    switch (format) {
      case RN_FORMAT_CSV:
        *out = dup_string(table->impl.to_csv());
        return;
      case RN_FORMAT_JSON:
        *out = dup_string(table->impl.to_json());
        return;
    }
    throw ranknull::Error(ranknull::ErrorCode::kInvalidArgument,
                          "unknown format value");
  });
}

} /* extern "C" */
