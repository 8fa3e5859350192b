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
#ifndef RANKNULL_CORE_METRICS_HPP_
#define RANKNULL_CORE_METRICS_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "core/ranking.hpp"

namespace ranknull {

/// Every rank metric here decomposes as g(M_p(f(r_1), ..., f(r_n))):
/// a per-rank transform f, a power mean of order p, and a post
/// transform g. The builtin metrics are exactly the compositions that
/// decomposition admits; the plumbing accepts custom combinations but
/// nothing beyond the builtin rows is shipped or promised.

enum class RankTransformKind { kIdentity, kReciprocal, kIndicator };

struct RankTransform {
  RankTransformKind kind = RankTransformKind::kIdentity;
  std::int64_t k = 0;  // indicator threshold; ignored otherwise

  static RankTransform identity() { return {RankTransformKind::kIdentity, 0}; }
  static RankTransform reciprocal() {
    return {RankTransformKind::kReciprocal, 0};
  }
  static RankTransform indicator(std::int64_t k) {
    return {RankTransformKind::kIndicator, k};
  }

  double operator()(double rank) const {
    switch (kind) {
      case RankTransformKind::kIdentity:
        return rank;
      case RankTransformKind::kReciprocal:
        return 1.0 / rank;
      case RankTransformKind::kIndicator:
        return rank <= static_cast<double>(k) ? 1.0 : 0.0;
    }
    return rank;
  }
};

enum class PostTransform { kIdentity, kReciprocal };

enum class Direction { kIncreasing, kDecreasing };

struct MetricDefinition {
  std::string name;
  RankTransform f;
  double p = 1.0;
  PostTransform g = PostTransform::kIdentity;
  Direction direction = Direction::kIncreasing;
};

/// A metric evaluation outcome together with what produced it.
struct MetricValue {
  double value = 0.0;
  MetricDefinition metric;
  std::size_t n = 0;
};

/// Evaluates a metric over raw rank values (fast path; ranks must
/// already satisfy the RankingTask invariants).
double evaluate_ranks(const MetricDefinition& metric,
                      std::span<const double> ranks);

/// Evaluates a metric over a validated rank set.
MetricValue evaluate(const MetricDefinition& metric, const RankSet& ranks);

/// The builtin metric table: mr, mrr, mrr_colloquial, imr, hmr, gmr,
/// igmr, and hits@k for the conventional cutoffs 1, 3, 5, 10.
const std::vector<MetricDefinition>& builtin_registry();

/// Stable names of the builtin metrics, registry order.
const std::vector<std::string>& builtin_metric_names();

/// Looks a metric up by stable name. "hits@<k>" is parametric and
/// accepts any positive integer cutoff. Throws Error(kUnknownMetric).
MetricDefinition find_metric(std::string_view name);

}  // namespace ranknull

#endif  // RANKNULL_CORE_METRICS_HPP_
