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
#ifndef RANKNULL_CORE_NULL_MODELS_HPP_
#define RANKNULL_CORE_NULL_MODELS_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "core/metrics.hpp"

namespace ranknull {

/// The null model throughout: each task's rank is drawn independently
/// and uniformly from {1, ..., N_i}. Everything here characterizes the
/// distribution a metric takes under that model.

/// How E[1/r] is evaluated for reciprocal-rank metrics.
///   kExactDiscrete  sum over the actual discrete support (default;
///                   ranks are discrete, so this is the true value)
///   kContinuous     continuous-uniform approximation ln(N)/(N - 1);
///                   kept behind a flag for reproducing published
///                   numbers that use it
enum class MrrMode { kExactDiscrete, kContinuous };

enum class NullMethod { kClosedExact, kClosedContinuous, kMonteCarlo };

struct NullStatistics {
  double expectation = 0.0;
  double variance = 0.0;
  NullMethod method = NullMethod::kClosedExact;
  std::uint64_t samples = 0;  // 0 for closed forms
  std::uint64_t seed = 0;     // meaningful only for Monte Carlo
  std::string metric_name;
  std::string sizes_digest;
};

/// E[r] = (N + 1) / 2 for r ~ U{1..N}. Throws Error(kInvalidSize).
double expected_rank(std::int64_t num_candidates);

/// Var[r] = (N^2 - 1) / 12 for r ~ U{1..N}. Throws Error(kInvalidSize).
double rank_variance(std::int64_t num_candidates);

/// H(n) = sum_{j<=n} 1/j. Exact summation up to a cutoff, asymptotic
/// series beyond it (error far below double precision either way).
double harmonic_number(std::int64_t n);

/// sum_{j<=n} 1/j^2, same evaluation strategy as harmonic_number.
double harmonic_number_squares(std::int64_t n);

/// True if null_statistics_closed supports this metric composition:
/// the arithmetic mean rank, reciprocal-rank means (either Table form),
/// and hits@k. Geometric/harmonic compositions have no closed form.
bool has_closed_form(const MetricDefinition& metric);

/// Closed-form expectation and variance of the metric under the null.
/// Variance is the variance of the n-task metric, i.e. per-task
/// variances scaled by 1/n^2.
/// Errors: kEmptyInput, kInvalidSize, kNoClosedForm (use Monte Carlo),
/// kDegenerateSize (continuous reciprocal mean at N = 1).
NullStatistics null_statistics_closed(const MetricDefinition& metric,
                                      std::span<const std::int64_t> sizes,
                                      MrrMode mode = MrrMode::kExactDiscrete);

/// Monte Carlo estimate of the same statistics: `samples` replicates,
/// replicate j drawing every rank from its own counter stream derived
/// from (seed, j), mean and unbiased sample variance over replicate
/// metric values accumulated in replicate order. Bit-identical for
/// identical (metric, sizes, samples, seed).
/// Errors: kEmptyInput, kInvalidSize, kInsufficientSamples (< 2).
NullStatistics null_statistics_monte_carlo(const MetricDefinition& metric,
                                           std::span<const std::int64_t> sizes,
                                           std::uint64_t samples,
                                           std::uint64_t seed);

/// Closed form when available, Monte Carlo fallback otherwise.
NullStatistics null_statistics_auto(const MetricDefinition& metric,
                                    std::span<const std::int64_t> sizes,
                                    MrrMode mode, std::uint64_t samples,
                                    std::uint64_t seed);

std::string_view null_method_name(NullMethod method);
NullMethod null_method_from_name(std::string_view name);

std::string_view mrr_mode_name(MrrMode mode);
MrrMode mrr_mode_from_name(std::string_view name);

}  // namespace ranknull

#endif  // RANKNULL_CORE_NULL_MODELS_HPP_
