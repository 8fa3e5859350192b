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
#include "core/null_models.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <vector>

#include "core/digest.hpp"
#include "core/error.hpp"
#include "core/rng.hpp"

namespace ranknull {

namespace {

constexpr double kEulerGamma = 0.57721566490153286061;
constexpr double kPiSquaredOverSix = 1.6449340668482264365;

// Above this the asymptotic expansions are already exact to double
// precision and direct summation only costs time.
constexpr std::int64_t kDirectSumCutoff = 1'000'000;

void check_sizes(std::span<const std::int64_t> sizes) {
  if (sizes.empty()) {
    throw Error(ErrorCode::kEmptyInput, "no candidate set sizes given");
  }
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 1) {
      throw Error(ErrorCode::kInvalidSize,
                  "candidate set size at index " + std::to_string(i) +
                      " must be >= 1, got " + std::to_string(sizes[i]));
    }
  }
}

double kahan_reciprocal_sum(std::int64_t n, int exponent) {
  double sum = 0.0;
  double carry = 0.0;
  // Smallest terms first so the running sum loses as little as possible.
  for (std::int64_t j = n; j >= 1; --j) {
    const double x = static_cast<double>(j);
    const double term = exponent == 1 ? 1.0 / x : 1.0 / (x * x);
    const double y = term - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return sum;
}

struct ReciprocalMoments {
  double mean;         // E[1/r]
  double mean_square;  // E[1/r^2]
};

ReciprocalMoments reciprocal_moments_exact(std::int64_t n) {
  return {harmonic_number(n) / static_cast<double>(n),
          harmonic_number_squares(n) / static_cast<double>(n)};
}

}  // namespace

double expected_rank(std::int64_t num_candidates) {
  if (num_candidates < 1) {
    throw Error(ErrorCode::kInvalidSize,
                "candidate set size must be >= 1, got " +
                    std::to_string(num_candidates));
  }
  return (static_cast<double>(num_candidates) + 1.0) / 2.0;
}

double rank_variance(std::int64_t num_candidates) {
  if (num_candidates < 1) {
    throw Error(ErrorCode::kInvalidSize,
                "candidate set size must be >= 1, got " +
                    std::to_string(num_candidates));
  }
  const double n = static_cast<double>(num_candidates);
  return (n * n - 1.0) / 12.0;
}

double harmonic_number(std::int64_t n) {
  if (n < 1) {
    throw Error(ErrorCode::kInvalidSize,
                "harmonic number of " + std::to_string(n));
  }
  if (n <= kDirectSumCutoff) return kahan_reciprocal_sum(n, 1);
  const double x = static_cast<double>(n);
  return std::log(x) + kEulerGamma + 1.0 / (2.0 * x) -
         1.0 / (12.0 * x * x) + 1.0 / (120.0 * x * x * x * x);
}

double harmonic_number_squares(std::int64_t n) {
  if (n < 1) {
    throw Error(ErrorCode::kInvalidSize,
                "harmonic square sum of " + std::to_string(n));
  }
  if (n <= kDirectSumCutoff) return kahan_reciprocal_sum(n, 2);
  // pi^2/6 minus the tail, with the tail's asymptotic expansion at n+1.
  const double x = static_cast<double>(n) + 1.0;
  const double tail =
      1.0 / x + 1.0 / (2.0 * x * x) + 1.0 / (6.0 * x * x * x) -
      1.0 / (30.0 * x * x * x * x * x);
  return kPiSquaredOverSix - tail;
}

bool has_closed_form(const MetricDefinition& metric) {
  if (metric.f.kind == RankTransformKind::kIndicator) return metric.p == 1.0;
  const bool mean_rank = metric.f.kind == RankTransformKind::kIdentity &&
                         metric.p == 1.0 &&
                         metric.g == PostTransform::kIdentity;
  const bool reciprocal_mean =
      (metric.f.kind == RankTransformKind::kIdentity && metric.p == -1.0 &&
       metric.g == PostTransform::kReciprocal) ||
      (metric.f.kind == RankTransformKind::kReciprocal && metric.p == 1.0 &&
       metric.g == PostTransform::kIdentity);
  return mean_rank || reciprocal_mean;
}

NullStatistics null_statistics_closed(const MetricDefinition& metric,
                                      std::span<const std::int64_t> sizes,
                                      MrrMode mode) {
  check_sizes(sizes);
  if (!has_closed_form(metric)) {
    throw Error(ErrorCode::kNoClosedForm,
                "no closed-form null statistics for \"" + metric.name +
                    "\"; use Monte Carlo");
  }

  const double n = static_cast<double>(sizes.size());
  NullStatistics stats;
  stats.metric_name = metric.name;
  stats.sizes_digest = sizes_digest(sizes);
  stats.method = NullMethod::kClosedExact;

  if (metric.f.kind == RankTransformKind::kIndicator) {
    // Per task the indicator is Bernoulli(q) with q = min(k, N)/N.
    double e_sum = 0.0;
    double var_sum = 0.0;
    for (const std::int64_t size : sizes) {
      const double q = static_cast<double>(std::min(metric.f.k, size)) /
                       static_cast<double>(size);
      e_sum += q;
      var_sum += q * (1.0 - q);
    }
    stats.expectation = e_sum / n;
    stats.variance = var_sum / (n * n);
    return stats;
  }

  if (metric.f.kind == RankTransformKind::kIdentity && metric.p == 1.0) {
    double e_sum = 0.0;
    double var_sum = 0.0;
    for (const std::int64_t size : sizes) {
      e_sum += expected_rank(size);
      var_sum += rank_variance(size);
    }
    stats.expectation = e_sum / n;
    stats.variance = var_sum / (n * n);
    return stats;
  }

  // Reciprocal-rank mean, either composition.
  double e_sum = 0.0;
  double var_sum = 0.0;
  std::unordered_map<std::int64_t, ReciprocalMoments> cache;
  for (const std::int64_t size : sizes) {
    double mean = 0.0;
    double variance = 0.0;
    if (mode == MrrMode::kExactDiscrete) {
      auto it = cache.find(size);
      if (it == cache.end()) {
        it = cache.emplace(size, reciprocal_moments_exact(size)).first;
      }
      mean = it->second.mean;
      variance = it->second.mean_square - mean * mean;
    } else {
      if (size == 1) {
        throw Error(ErrorCode::kDegenerateSize,
                    "continuous reciprocal mean is undefined at N = 1");
      }
      const double x = static_cast<double>(size);
      mean = std::log(x) / (x - 1.0);
      variance = 1.0 / x - mean * mean;
    }
    e_sum += mean;
    var_sum += variance;
  }
  stats.expectation = e_sum / n;
  stats.variance = var_sum / (n * n);
  stats.method = mode == MrrMode::kExactDiscrete ? NullMethod::kClosedExact
                                                 : NullMethod::kClosedContinuous;
  return stats;
}

NullStatistics null_statistics_monte_carlo(const MetricDefinition& metric,
                                           std::span<const std::int64_t> sizes,
                                           std::uint64_t samples,
                                           std::uint64_t seed) {
  check_sizes(sizes);
  if (samples < 2) {
    throw Error(ErrorCode::kInsufficientSamples,
                "Monte Carlo needs >= 2 samples for a variance estimate");
  }

  std::vector<double> ranks(sizes.size());
  double mean = 0.0;
  double m2 = 0.0;
  for (std::uint64_t replicate = 0; replicate < samples; ++replicate) {
    CounterRng rng(seed, replicate);
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      ranks[i] = static_cast<double>(rng.uniform_rank(sizes[i]));
    }
    const double value = evaluate_ranks(metric, ranks);
    const double count = static_cast<double>(replicate + 1);
    const double delta = value - mean;
    mean += delta / count;
    m2 += delta * (value - mean);
  }

  NullStatistics stats;
  stats.expectation = mean;
  stats.variance = m2 / static_cast<double>(samples - 1);
  stats.method = NullMethod::kMonteCarlo;
  stats.samples = samples;
  stats.seed = seed;
  stats.metric_name = metric.name;
  stats.sizes_digest = sizes_digest(sizes);
  return stats;
}

NullStatistics null_statistics_auto(const MetricDefinition& metric,
                                    std::span<const std::int64_t> sizes,
                                    MrrMode mode, std::uint64_t samples,
                                    std::uint64_t seed) {
  if (has_closed_form(metric)) {
    return null_statistics_closed(metric, sizes, mode);
  }
  return null_statistics_monte_carlo(metric, sizes, samples, seed);
}

std::string_view null_method_name(NullMethod method) {
  switch (method) {
    case NullMethod::kClosedExact:
      return "closed_exact";
    case NullMethod::kClosedContinuous:
      return "closed_continuous";
    case NullMethod::kMonteCarlo:
      return "monte_carlo";
  }
  return "closed_exact";
}

NullMethod null_method_from_name(std::string_view name) {
  if (name == "closed_exact") return NullMethod::kClosedExact;
  if (name == "closed_continuous") return NullMethod::kClosedContinuous;
  if (name == "monte_carlo") return NullMethod::kMonteCarlo;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown null method \"" + std::string(name) + "\"");
}

std::string_view mrr_mode_name(MrrMode mode) {
  return mode == MrrMode::kExactDiscrete ? "discrete" : "continuous";
}

MrrMode mrr_mode_from_name(std::string_view name) {
  if (name == "discrete") return MrrMode::kExactDiscrete;
  if (name == "continuous") return MrrMode::kContinuous;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown reciprocal-mean mode \"" + std::string(name) + "\"");
}

}  // namespace ranknull
